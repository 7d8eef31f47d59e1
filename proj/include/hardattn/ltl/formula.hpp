#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace hardattn::ltl {

/// LTL formula over symbol atoms Qa and predicate atoms. Nodes are shared,
/// so a formula is a DAG; all traversals memoize per node.
class Formula {
 public:
  enum class Kind : std::uint8_t { Const, Symbol, Predicate, Not, And, Or, Since, Until };

  Formula();  // constant 0

  static Formula constant(bool value);
  static Formula symbol(std::string name);
  static Formula predicate(std::string family);
  static Formula negate(Formula f);
  static Formula all(std::vector<Formula> parts);
  static Formula any(std::vector<Formula> parts);
  /// lhs since rhs; strict = false gives the non-strict variant.
  static Formula since(Formula lhs, Formula rhs, bool strict = true);
  static Formula until(Formula lhs, Formula rhs, bool strict = true);

  Kind kind() const;
  bool value() const;
  const std::string& name() const;
  bool strict() const;
  const std::vector<Formula>& children() const;
  const Formula& lhs() const { return children()[0]; }
  const Formula& rhs() const { return children()[1]; }
  bool is_temporal() const { return kind() == Kind::Since || kind() == Kind::Until; }

  /// Node identity, stable while the formula is alive.
  const void* id() const { return node_.get(); }

  friend Formula operator!(Formula f) { return negate(std::move(f)); }
  friend Formula operator&&(Formula a, Formula b) { return all({std::move(a), std::move(b)}); }
  friend Formula operator||(Formula a, Formula b) { return any({std::move(a), std::move(b)}); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    bool value = false;
    bool strict = true;
    std::string name;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

/// Hash-consing: equal ids iff structurally equal subformulas.
class StructuralIds {
 public:
  StructuralIds();
  ~StructuralIds();
  StructuralIds(const StructuralIds&) = delete;
  StructuralIds& operator=(const StructuralIds&) = delete;

  std::size_t id(const Formula& f);
  std::size_t count() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::size_t temporal_depth(const Formula& f);

/// Number of distinct subformulas.
std::size_t dag_size(const Formula& f);
/// Size of the formula written out as a tree; saturates at UINT64_MAX.
std::uint64_t tree_size(const Formula& f);

bool contains_until(const Formula& f);
/// Only the strict since operator appears.
bool is_since_only(const Formula& f);

/// Replaces since/until by their non-strict variants.
Formula to_nonstrict(const Formula& f);

/// Symbols and predicate families mentioned, sorted.
std::vector<std::string> symbols_of(const Formula& f);
std::vector<std::string> predicates_of(const Formula& f);

}  // namespace hardattn::ltl
