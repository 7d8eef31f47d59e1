#include "hardattn/automata/dfa.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "hardattn/core/error.hpp"

namespace hardattn::automata {

Dfa::Dfa(Alphabet alphabet, std::vector<std::string> states, std::vector<std::vector<State>> delta,
         State start, std::vector<State> finals)
    : alphabet_(std::move(alphabet)),
      states_(std::move(states)),
      delta_(std::move(delta)),
      start_(start),
      finals_(std::move(finals)) {
  if (states_.empty()) throw Error("automaton has no states");
  std::set<std::string> seen;
  for (const auto& s : states_) {
    if (!is_valid_symbol(s)) throw Error("invalid state name '" + s + "'");
    if (!seen.insert(s).second) throw Error("duplicate state '" + s + "'");
  }
  if (delta_.size() != states_.size()) throw Error("transition table has wrong number of rows");
  for (std::size_t q = 0; q < delta_.size(); ++q) {
    if (delta_[q].size() != alphabet_.size())
      throw Error("transition function is not total at state '" + states_[q] + "'");
    for (State r : delta_[q])
      if (r >= states_.size()) throw Error("transition to unknown state");
  }
  if (start_ >= states_.size()) throw Error("invalid start state");
  std::sort(finals_.begin(), finals_.end());
  finals_.erase(std::unique(finals_.begin(), finals_.end()), finals_.end());
  for (State f : finals_)
    if (f >= states_.size()) throw Error("invalid final state");
}

std::optional<State> Dfa::find_state(const std::string& name) const {
  auto it = std::find(states_.begin(), states_.end(), name);
  if (it == states_.end()) return std::nullopt;
  return static_cast<State>(it - states_.begin());
}

State Dfa::state_index(const std::string& name) const {
  auto q = find_state(name);
  if (!q) throw Error("unknown state '" + name + "'");
  return *q;
}

bool Dfa::is_final(State q) const { return std::binary_search(finals_.begin(), finals_.end(), q); }

StateTrace run_dfa(const Dfa& a, const Word& w) { return run_dfa(a, w, a.start()); }

StateTrace run_dfa(const Dfa& a, const Word& w, State from) {
  if (from >= a.num_states()) throw Error("invalid state");
  StateTrace t;
  t.states.reserve(w.size() + 1);
  t.states.push_back(from);
  for (Symbol s : w) {
    if (s >= a.alphabet().size()) throw Error("unknown symbol in input");
    t.states.push_back(a.step(t.states.back(), s));
  }
  t.accepted = a.is_final(t.states.back());
  return t;
}

bool dfa_accepts(const Dfa& a, const Word& w) { return run_dfa(a, w).accepted; }

namespace {

Transformation compose(const Transformation& first, const Transformation& then) {
  Transformation r(first.size());
  for (std::size_t q = 0; q < first.size(); ++q) r[q] = then[first[q]];
  return r;
}

}  // namespace

std::vector<Transformation> transition_monoid(const Dfa& a) {
  std::vector<Transformation> gens;
  for (Symbol s = 0; s < a.alphabet().size(); ++s) {
    Transformation t(a.num_states());
    for (State q = 0; q < a.num_states(); ++q) t[q] = a.step(q, s);
    gens.push_back(std::move(t));
  }
  std::set<Transformation> seen(gens.begin(), gens.end());
  std::deque<Transformation> todo(seen.begin(), seen.end());
  while (!todo.empty()) {
    Transformation t = todo.front();
    todo.pop_front();
    for (const auto& g : gens) {
      Transformation u = compose(t, g);
      if (seen.insert(u).second) todo.push_back(std::move(u));
    }
  }
  return {seen.begin(), seen.end()};
}

bool is_counter_free(const Dfa& a) {
  for (const auto& m : transition_monoid(a)) {
    Transformation power = m;
    bool stable = false;
    for (std::size_t k = 1; k <= a.num_states() && !stable; ++k) {
      Transformation next = compose(power, m);
      stable = next == power;
      power = std::move(next);
    }
    if (!stable) return false;
  }
  return true;
}

bool is_identity_reset(const Dfa& a) {
  for (Symbol s = 0; s < a.alphabet().size(); ++s) {
    bool identity = true, constant = true;
    for (State q = 0; q < a.num_states(); ++q) {
      identity = identity && a.step(q, s) == q;
      constant = constant && a.step(q, s) == a.step(0, s);
    }
    if (!identity && !constant) return false;
  }
  return true;
}

}  // namespace hardattn::automata
