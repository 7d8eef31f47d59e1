#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hardattn/core/alphabet.hpp"

namespace hardattn::automata {

using State = std::size_t;

/// Complete deterministic automaton. delta[q][a] is the successor of q on a.
class Dfa {
 public:
  Dfa(Alphabet alphabet, std::vector<std::string> states, std::vector<std::vector<State>> delta,
      State start, std::vector<State> finals);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<std::string>& states() const { return states_; }
  std::size_t num_states() const { return states_.size(); }
  const std::string& state_name(State q) const { return states_.at(q); }
  std::optional<State> find_state(const std::string& name) const;
  State state_index(const std::string& name) const;

  State step(State q, Symbol a) const { return delta_[q][a]; }
  const std::vector<std::vector<State>>& delta() const { return delta_; }
  State start() const { return start_; }
  const std::vector<State>& finals() const { return finals_; }
  bool is_final(State q) const;

  friend bool operator==(const Dfa&, const Dfa&) = default;

 private:
  Alphabet alphabet_;
  std::vector<std::string> states_;
  std::vector<std::vector<State>> delta_;
  State start_;
  std::vector<State> finals_;
};

/// States q_0..q_n with q_0 the start state.
struct StateTrace {
  std::vector<State> states;
  bool accepted = false;
};

StateTrace run_dfa(const Dfa& a, const Word& w);
StateTrace run_dfa(const Dfa& a, const Word& w, State from);
bool dfa_accepts(const Dfa& a, const Word& w);

/// Transition function of a word, as the image of each state.
using Transformation = std::vector<State>;

/// All transformations induced by non-empty words.
std::vector<Transformation> transition_monoid(const Dfa& a);

/// Aperiodicity of the transition monoid.
bool is_counter_free(const Dfa& a);

/// Every symbol acts as the identity or as a constant map.
bool is_identity_reset(const Dfa& a);

}  // namespace hardattn::automata
