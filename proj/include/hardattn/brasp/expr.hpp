#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <vector>

namespace hardattn::brasp {

/// Position variable read by an atom.
enum class Var : std::uint8_t { I, J };

/// An atom: vector P_t or predicate family f, read at i or j.
struct Atom {
  enum class Kind : std::uint8_t { Vector, Predicate };
  Kind kind;
  std::size_t index;
  Var var;

  auto operator<=>(const Atom&) const = default;
};

/// Boolean combination of atoms and constants. Immutable, cheap to copy.
class BoolExpr {
 public:
  enum class Kind : std::uint8_t { Const, Atom, Not, And, Or };

  BoolExpr();  // constant 0

  static BoolExpr constant(bool value);
  static BoolExpr atom(Atom a);
  static BoolExpr vec(std::size_t index, Var var);
  static BoolExpr pred(std::size_t family, Var var);
  static BoolExpr negate(BoolExpr e);
  static BoolExpr all(std::vector<BoolExpr> parts);
  static BoolExpr any(std::vector<BoolExpr> parts);

  Kind kind() const;
  bool value() const;
  const Atom& atom() const;
  const std::vector<BoolExpr>& children() const;

  template <class AtomFn>
  bool evaluate(const AtomFn& fn) const;

  friend BoolExpr operator!(BoolExpr e) { return negate(std::move(e)); }
  friend BoolExpr operator&&(BoolExpr a, BoolExpr b) { return all({std::move(a), std::move(b)}); }
  friend BoolExpr operator||(BoolExpr a, BoolExpr b) { return any({std::move(a), std::move(b)}); }

  friend bool operator==(const BoolExpr& a, const BoolExpr& b);

 private:
  struct Node;
  explicit BoolExpr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

struct BoolExpr::Node {
  Kind kind;
  bool value = false;
  Atom atom{Atom::Kind::Vector, 0, Var::I};
  std::vector<BoolExpr> children;
};

template <class AtomFn>
bool BoolExpr::evaluate(const AtomFn& fn) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Const: return n.value;
    case Kind::Atom: return fn(n.atom);
    case Kind::Not: return !n.children[0].evaluate(fn);
    case Kind::And:
      for (const auto& c : n.children)
        if (!c.evaluate(fn)) return false;
      return true;
    case Kind::Or:
      for (const auto& c : n.children)
        if (c.evaluate(fn)) return true;
      return false;
  }
  return false;
}

/// Distinct atoms of e, sorted.
std::vector<Atom> atoms_of(const BoolExpr& e);
bool uses_var(const BoolExpr& e, Var var);

/// Replaces every atom by the expression fn returns for it.
template <class Fn>
BoolExpr substitute(const BoolExpr& e, const Fn& fn) {
  switch (e.kind()) {
    case BoolExpr::Kind::Const: return e;
    case BoolExpr::Kind::Atom: return fn(e.atom());
    case BoolExpr::Kind::Not: return BoolExpr::negate(substitute(e.children()[0], fn));
    case BoolExpr::Kind::And:
    case BoolExpr::Kind::Or: {
      std::vector<BoolExpr> parts;
      for (const auto& c : e.children()) parts.push_back(substitute(c, fn));
      return e.kind() == BoolExpr::Kind::And ? BoolExpr::all(std::move(parts))
                                             : BoolExpr::any(std::move(parts));
    }
  }
  return e;
}

/// Folds constants; the result is semantically equal to e.
BoolExpr simplify(const BoolExpr& e);

/// Evaluates e under an assignment to a list of atoms (bit k = atoms[k]).
bool evaluate_assignment(const BoolExpr& e, const std::vector<Atom>& atoms, std::uint64_t assignment);

}  // namespace hardattn::brasp
