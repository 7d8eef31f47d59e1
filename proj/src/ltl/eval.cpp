#include "hardattn/ltl/eval.hpp"

#include <unordered_map>

namespace hardattn::ltl {

namespace {

class Evaluator {
 public:
  Evaluator(const Alphabet& alphabet, const Word& input, const predicates::PredicateBindings& preds)
      : alphabet_(alphabet), input_(input), preds_(preds), n_(input.size()) {}

  const std::vector<char>& values(const Formula& f) {
    auto it = memo_.find(f.id());
    if (it != memo_.end()) return it->second;
    std::vector<char> v(n_, 0);
    switch (f.kind()) {
      case Formula::Kind::Const:
        v.assign(n_, f.value());
        break;
      case Formula::Kind::Symbol: {
        auto s = alphabet_.find(f.name());
        if (!s) throw Error("atom Q" + f.name() + " is not in the alphabet");
        for (std::size_t i = 0; i < n_; ++i) v[i] = input_[i] == *s;
        break;
      }
      case Formula::Kind::Predicate: {
        predicates::PredicateFamily fam = preds_.resolve(f.name());
        for (std::size_t i = 0; i < n_; ++i) v[i] = fam(n_, i + 1);
        break;
      }
      case Formula::Kind::Not: {
        const auto& a = values(f.children()[0]);
        for (std::size_t i = 0; i < n_; ++i) v[i] = !a[i];
        break;
      }
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        bool is_and = f.kind() == Formula::Kind::And;
        v.assign(n_, is_and);
        for (const auto& c : f.children()) {
          const auto& a = values(c);
          for (std::size_t i = 0; i < n_; ++i) v[i] = is_and ? (v[i] && a[i]) : (v[i] || a[i]);
        }
        break;
      }
      case Formula::Kind::Since: {
        const auto& a = values(f.lhs());
        const auto& b = values(f.rhs());
        // held = some j before (or at) i has b, with a on the gap.
        char held = 0;
        for (std::size_t i = 0; i < n_; ++i) {
          if (f.strict()) {
            v[i] = held;
            held = b[i] || (a[i] && held);
          } else {
            held = b[i] || (a[i] && held);
            v[i] = held;
          }
        }
        break;
      }
      case Formula::Kind::Until: {
        const auto& a = values(f.lhs());
        const auto& b = values(f.rhs());
        char held = 0;
        for (std::size_t k = n_; k > 0; --k) {
          std::size_t i = k - 1;
          if (f.strict()) {
            v[i] = held;
            held = b[i] || (a[i] && held);
          } else {
            held = b[i] || (a[i] && held);
            v[i] = held;
          }
        }
        break;
      }
    }
    return memo_.emplace(f.id(), std::move(v)).first->second;
  }

 private:
  const Alphabet& alphabet_;
  const Word& input_;
  const predicates::PredicateBindings& preds_;
  std::size_t n_;
  std::unordered_map<const void*, std::vector<char>> memo_;
};

}  // namespace

std::vector<bool> ltl_eval_all(const Formula& f, const Alphabet& alphabet, const Word& input,
                               const predicates::PredicateBindings& preds) {
  if (input.empty()) throw Error("input string must not be empty");
  for (Symbol s : input)
    if (s >= alphabet.size()) throw Error("input symbol outside the alphabet");
  Evaluator ev(alphabet, input, preds);
  const auto& v = ev.values(f);
  return {v.begin(), v.end()};
}

bool ltl_eval(const Formula& f, const Alphabet& alphabet, const Word& input, std::size_t i,
              const predicates::PredicateBindings& preds) {
  if (i < 1 || i > input.size()) throw Error("position " + std::to_string(i) + " out of range");
  return ltl_eval_all(f, alphabet, input, preds)[i - 1];
}

bool ltl_accepts(const Formula& f, const Alphabet& alphabet, const Word& input,
                 const predicates::PredicateBindings& preds) {
  if (input.empty()) throw Error("input string must not be empty");
  return ltl_eval_all(f, alphabet, input, preds).back();
}

}  // namespace hardattn::ltl
