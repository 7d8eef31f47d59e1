#include "hardattn/automata/cascade.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "hardattn/core/error.hpp"

namespace hardattn::automata {

using brasp::BoolExpr;
using brasp::ProgramBuilder;
using brasp::Var;

IdentityResetAutomaton::IdentityResetAutomaton(Dfa dfa) : dfa_(std::move(dfa)) {
  if (!is_identity_reset(dfa_)) throw Error("automaton is not identity-reset");
  resets_.resize(dfa_.num_states());
  for (Symbol a = 0; a < dfa_.alphabet().size(); ++a) {
    bool identity = true;
    for (State q = 0; q < dfa_.num_states(); ++q) identity = identity && dfa_.step(q, a) == q;
    if (!identity) resets_[dfa_.step(0, a)].push_back(a);
  }
}

std::vector<Symbol> IdentityResetAutomaton::reset_symbols() const {
  std::vector<Symbol> all;
  for (const auto& r : resets_) all.insert(all.end(), r.begin(), r.end());
  std::sort(all.begin(), all.end());
  return all;
}

std::string factor_symbol(const std::string& tuple, const std::string& symbol) {
  return tuple.empty() ? symbol : tuple + "." + symbol;
}

Cascade::Cascade(Alphabet alphabet, std::vector<IdentityResetAutomaton> factors,
                 std::optional<std::map<std::string, std::string>> homomorphism)
    : alphabet_(std::move(alphabet)), factors_(std::move(factors)), hom_(std::move(homomorphism)) {
  if (factors_.empty()) throw Error("cascade has no factors");
  tuples_.push_back({{}});
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    const Dfa& f = factors_[k].dfa();
    std::vector<std::string> expected;
    for (const auto& t : tuples_[k])
      for (const auto& a : alphabet_.symbols()) expected.push_back(factor_symbol(tuple_name(t), a));
    if (f.alphabet().symbols() != expected)
      throw Error("factor " + std::to_string(k + 1) + " alphabet does not match the cascade");
    std::vector<std::vector<State>> next;
    for (const auto& t : tuples_[k])
      for (State q = 0; q < f.num_states(); ++q) {
        auto u = t;
        u.push_back(q);
        next.push_back(std::move(u));
      }
    tuples_.push_back(std::move(next));
    std::set<std::string> names;
    for (const auto& t : tuples_.back())
      if (!names.insert(tuple_name(t)).second)
        throw Error("ambiguous state tuple name '" + tuple_name(t) + "'");
  }
  if (hom_) {
    std::set<std::string> names;
    for (const auto& t : tuples_.back()) names.insert(tuple_name(t));
    for (const auto& [from, to] : *hom_)
      if (!names.count(from)) throw Error("homomorphism maps unknown global state '" + from + "'");
  }
}

std::string Cascade::tuple_name(const std::vector<State>& tuple) const {
  std::string s;
  for (std::size_t k = 0; k < tuple.size(); ++k) s += factors_.at(k).dfa().state_name(tuple[k]);
  return s;
}

Symbol Cascade::factor_input(std::size_t, std::size_t tuple_index, Symbol a) const {
  return tuple_index * alphabet_.size() + a;
}

std::vector<State> Cascade::start_tuple() const {
  std::vector<State> t;
  for (const auto& f : factors_) t.push_back(f.dfa().start());
  return t;
}

namespace {

/// Index of the prefix t[0..k) within tuples(k).
std::size_t prefix_index(const Cascade& c, const std::vector<State>& t, std::size_t k) {
  std::size_t index = 0;
  for (std::size_t m = 0; m < k; ++m) index = index * c.factors()[m].dfa().num_states() + t[m];
  return index;
}

std::vector<State> global_step(const Cascade& c, const std::vector<State>& t, Symbol a) {
  std::vector<State> u(t.size());
  for (std::size_t k = 0; k < t.size(); ++k)
    u[k] = c.factors()[k].dfa().step(t[k], c.factor_input(k, prefix_index(c, t, k), a));
  return u;
}

}  // namespace

Dfa cascade_to_global(const Cascade& c) {
  const auto& all = c.tuples(c.factors().size());
  std::size_t k = c.factors().size();
  std::vector<std::string> names;
  std::vector<std::vector<State>> delta;
  for (const auto& t : all) {
    names.push_back(c.tuple_name(t));
    std::vector<State> row;
    for (Symbol a = 0; a < c.alphabet().size(); ++a) row.push_back(prefix_index(c, global_step(c, t, a), k));
    delta.push_back(std::move(row));
  }
  return Dfa(c.alphabet(), std::move(names), std::move(delta), prefix_index(c, c.start_tuple(), k), {});
}

namespace {

const std::string& image_of(const Cascade& c, const std::string& global) {
  if (!c.homomorphism()) throw Error("cascade has no homomorphism");
  auto it = c.homomorphism()->find(global);
  if (it == c.homomorphism()->end()) throw Error("unmapped global state '" + global + "'");
  return it->second;
}

void check_alphabets(const Cascade& c, const Dfa& target) {
  if (c.alphabet() != target.alphabet()) throw Error("cascade and automaton alphabets differ");
}

}  // namespace

Dfa cascade_to_global(const Cascade& c, const Dfa& target) {
  check_alphabets(c, target);
  Dfa g = cascade_to_global(c);
  std::vector<State> finals;
  for (State q = 0; q < g.num_states(); ++q)
    if (target.is_final(target.state_index(image_of(c, g.state_name(q))))) finals.push_back(q);
  return Dfa(g.alphabet(), g.states(), g.delta(), g.start(), std::move(finals));
}

bool check_homomorphism(const Cascade& c, const Dfa& target) {
  check_alphabets(c, target);
  Dfa g = cascade_to_global(c);
  std::vector<State> phi;
  for (State q = 0; q < g.num_states(); ++q) phi.push_back(target.state_index(image_of(c, g.state_name(q))));
  for (State q = 0; q < g.num_states(); ++q)
    for (Symbol a = 0; a < g.alphabet().size(); ++a)
      if (phi[g.step(q, a)] != target.step(phi[q], a)) return false;
  return true;
}

Cascade identity_cascade(const Dfa& a) {
  std::map<std::string, std::string> hom;
  for (const auto& s : a.states()) hom[s] = s;
  return Cascade(a.alphabet(), {IdentityResetAutomaton(a)}, std::move(hom));
}

namespace {

/// Emits B_q for every state q of b; input(x) is the expression for factor
/// symbol x at position j.
std::vector<std::size_t> emit_factor(ProgramBuilder& pb, const IdentityResetAutomaton& b, State s,
                                     const std::function<BoolExpr(Symbol)>& input,
                                     const std::string& prefix) {
  std::vector<BoolExpr> reset_terms;
  for (Symbol x : b.reset_symbols()) reset_terms.push_back(input(x));
  BoolExpr score = BoolExpr::any(reset_terms);
  std::vector<std::size_t> out;
  for (State q = 0; q < b.dfa().num_states(); ++q) {
    std::vector<BoolExpr> value_terms;
    for (Symbol x : b.resets_to(q)) value_terms.push_back(input(x));
    out.push_back(pb.attention(pb.fresh(prefix + b.dfa().state_name(q)), Direction::Rightmost,
                               MaskKind::FutureStrict, score, BoolExpr::any(value_terms),
                               BoolExpr::constant(q == s)));
  }
  return out;
}

}  // namespace

brasp::Program identity_reset_to_brasp(const IdentityResetAutomaton& b, State s) {
  if (s >= b.dfa().num_states()) throw Error("invalid start state");
  ProgramBuilder pb(b.dfa().alphabet());
  auto vecs = emit_factor(pb, b, s, [](Symbol x) { return BoolExpr::vec(x, Var::J); }, "B_");
  return std::move(pb).accept(vecs[s]);
}

brasp::Program cascade_to_brasp(const Cascade& c, const Dfa& target) {
  if (!check_homomorphism(c, target)) throw Error("homomorphism check fails");
  Dfa global = cascade_to_global(c);
  if (target.state_index(image_of(c, global.state_name(global.start()))) != target.start())
    throw Error("homomorphism does not map the start tuple to the start state");

  const Alphabet& sigma = c.alphabet();
  ProgramBuilder pb(sigma);
  // C vector of each prefix tuple of the factors emitted so far; the empty
  // prefix has none.
  std::vector<std::optional<std::size_t>> prefix_vec{std::nullopt};
  for (std::size_t k = 0; k < c.factors().size(); ++k) {
    const auto& factor = c.factors()[k];
    const auto& prefixes = c.tuples(k);
    std::string tag = std::to_string(k + 1);
    std::map<Symbol, std::size_t> lifted;
    for (Symbol x : factor.reset_symbols()) {
      std::size_t t = x / sigma.size();
      Symbol a = x % sigma.size();
      if (!prefix_vec[t]) continue;
      lifted[x] = pb.positionwise(
          pb.fresh("L" + tag + "_" + c.tuple_name(prefixes[t]) + "_" + sigma.symbol(a)),
          BoolExpr::vec(*prefix_vec[t], Var::I) && BoolExpr::vec(pb.q(a), Var::I));
    }
    auto input = [&](Symbol x) {
      auto it = lifted.find(x);
      return BoolExpr::vec(it == lifted.end() ? pb.q(x % sigma.size()) : it->second, Var::J);
    };
    auto bvecs = emit_factor(pb, factor, factor.dfa().start(), input, "B" + tag + "_");
    std::vector<std::optional<std::size_t>> next;
    for (std::size_t t = 0; t < prefixes.size(); ++t)
      for (State r = 0; r < factor.dfa().num_states(); ++r) {
        if (!prefix_vec[t]) {
          next.push_back(bvecs[r]);
          continue;
        }
        auto tuple = prefixes[t];
        tuple.push_back(r);
        next.push_back(pb.positionwise(pb.fresh("C_" + c.tuple_name(tuple)),
                                       BoolExpr::vec(*prefix_vec[t], Var::I) &&
                                           BoolExpr::vec(bvecs[r], Var::I)));
      }
    prefix_vec = std::move(next);
  }

  std::vector<std::size_t> avec;
  for (State r = 0; r < target.num_states(); ++r) {
    std::vector<BoolExpr> terms;
    for (State g = 0; g < global.num_states(); ++g)
      if (image_of(c, global.state_name(g)) == target.state_name(r))
        terms.push_back(BoolExpr::vec(*prefix_vec[g], Var::I));
    avec.push_back(pb.positionwise(pb.fresh("A_" + target.state_name(r)), BoolExpr::any(terms)));
  }
  std::vector<std::size_t> yvec;
  for (State r = 0; r < target.num_states(); ++r) {
    std::vector<BoolExpr> terms;
    for (State q = 0; q < target.num_states(); ++q)
      for (Symbol a = 0; a < sigma.size(); ++a)
        if (target.step(q, a) == r)
          terms.push_back(BoolExpr::vec(avec[q], Var::I) && BoolExpr::vec(pb.q(a), Var::I));
    yvec.push_back(pb.positionwise(pb.fresh("Y_" + target.state_name(r)), BoolExpr::any(terms)));
  }
  if (target.finals().size() == 1) return std::move(pb).accept(yvec[target.finals()[0]]);
  std::vector<BoolExpr> finals;
  for (State f : target.finals()) finals.push_back(BoolExpr::vec(yvec[f], Var::I));
  std::size_t y = pb.positionwise(pb.fresh("Y"), BoolExpr::any(finals));
  return std::move(pb).accept(y);
}

}  // namespace hardattn::automata
