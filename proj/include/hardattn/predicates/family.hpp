#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hardattn/core/error.hpp"

namespace hardattn::predicates {

/// A family of position predicates pi_n(i), for strings of length n and
/// positions 1 <= i <= n.
class PredicateFamily {
 public:
  using Evaluator = std::function<bool(std::size_t n, std::size_t i)>;

  PredicateFamily(std::string name, Evaluator eval);

  const std::string& name() const { return name_; }

  /// Throws when i is outside 1..n.
  bool operator()(std::size_t n, std::size_t i) const;

 private:
  std::string name_;
  Evaluator eval_;
};

/// MOD[r,m]: true iff i = r (mod m). Independent of n.
PredicateFamily mod_predicate(unsigned r, unsigned m);

/// Mid: true iff n is odd and i = (n+1)/2.
PredicateFamily mid_predicate();

/// Looks up "Mid" or "MOD[r,m]".
std::optional<PredicateFamily> builtin_family(std::string_view name);

/// Family read from a table of "n i bit" lines. Lengths not covered by the
/// table raise an error when evaluated.
PredicateFamily load_table_family(std::string name, std::string_view text);

/// Name -> family resolution. Explicit bindings win over the built-ins.
class PredicateBindings {
 public:
  PredicateBindings() = default;
  explicit PredicateBindings(std::vector<PredicateFamily> families);

  void bind(PredicateFamily family);
  PredicateFamily resolve(std::string_view name) const;
  bool can_resolve(std::string_view name) const;

 private:
  std::map<std::string, PredicateFamily, std::less<>> families_;
};

/// table[f][i-1] = family f at position i, for one string length n.
std::vector<std::vector<bool>> predicate_table(const std::vector<std::string>& families,
                                               std::size_t n,
                                               const PredicateBindings& bindings);

}  // namespace hardattn::predicates
