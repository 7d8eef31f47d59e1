#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hardattn/automata/dfa.hpp"
#include "hardattn/brasp/program.hpp"

namespace hardattn::automata {

class IdentityResetAutomaton {
 public:
  /// Throws Error unless every symbol is an identity or a reset.
  explicit IdentityResetAutomaton(Dfa dfa);

  const Dfa& dfa() const { return dfa_; }
  /// R_r: symbols resetting to r.
  const std::vector<Symbol>& resets_to(State r) const { return resets_.at(r); }
  /// R: all reset symbols.
  std::vector<Symbol> reset_symbols() const;

 private:
  Dfa dfa_;
  std::vector<std::vector<Symbol>> resets_;
};

/// Symbol name of a cascade factor: "<tuple>.<symbol>", or just the symbol
/// for the first factor.
std::string factor_symbol(const std::string& tuple, const std::string& symbol);

/// Cascade product B_1 o ... o B_k of identity-reset automata. Factor k reads
/// (state tuple of factors 1..k-1, input symbol). Global states are tuples,
/// named by concatenating the component names.
class Cascade {
 public:
  Cascade(Alphabet alphabet, std::vector<IdentityResetAutomaton> factors,
          std::optional<std::map<std::string, std::string>> homomorphism = std::nullopt);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<IdentityResetAutomaton>& factors() const { return factors_; }
  const std::optional<std::map<std::string, std::string>>& homomorphism() const { return hom_; }

  /// Prefix tuples of factors 0..k-1 (k = 0 gives the single empty tuple).
  const std::vector<std::vector<State>>& tuples(std::size_t k) const { return tuples_.at(k); }
  std::string tuple_name(const std::vector<State>& tuple) const;
  /// Input symbol of factor k for a prefix tuple and base symbol.
  Symbol factor_input(std::size_t k, std::size_t tuple_index, Symbol a) const;
  std::vector<State> start_tuple() const;

 private:
  Alphabet alphabet_;
  std::vector<IdentityResetAutomaton> factors_;
  std::optional<std::map<std::string, std::string>> hom_;
  std::vector<std::vector<std::vector<State>>> tuples_;
};

/// Product automaton over all state tuples. Finals are the preimages of the
/// target's finals when a target is given, else empty.
Dfa cascade_to_global(const Cascade& c);
Dfa cascade_to_global(const Cascade& c, const Dfa& target);

/// phi(delta_C(q, a)) = delta_A(phi(q), a) for every global state q and symbol a.
bool check_homomorphism(const Cascade& c, const Dfa& target);

/// One-factor cascade of an identity-reset automaton mapped by state name.
Cascade identity_cascade(const Dfa& a);

/// Vectors B_q(i), true iff B started in s is in q before reading position i.
/// The program's output is B_s.
brasp::Program identity_reset_to_brasp(const IdentityResetAutomaton& b, State s);

/// Simulation of the target through the cascade. Output is Y_f for a single
/// final state f, or a disjunction over several finals.
brasp::Program cascade_to_brasp(const Cascade& c, const Dfa& target);

}  // namespace hardattn::automata
