#include "hardattn/brasp/expr.hpp"

#include <algorithm>

namespace hardattn::brasp {

BoolExpr::BoolExpr() : BoolExpr(constant(false)) {}

BoolExpr::BoolExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

BoolExpr BoolExpr::constant(bool value) {
  static const BoolExpr zero(std::make_shared<const Node>(Node{Kind::Const, false}));
  static const BoolExpr one(std::make_shared<const Node>(Node{Kind::Const, true}));
  return value ? one : zero;
}

BoolExpr BoolExpr::atom(Atom a) {
  Node n{Kind::Atom};
  n.atom = a;
  return BoolExpr(std::make_shared<const Node>(std::move(n)));
}

BoolExpr BoolExpr::vec(std::size_t index, Var var) { return atom({Atom::Kind::Vector, index, var}); }

BoolExpr BoolExpr::pred(std::size_t family, Var var) { return atom({Atom::Kind::Predicate, family, var}); }

BoolExpr BoolExpr::negate(BoolExpr e) {
  Node n{Kind::Not};
  n.children.push_back(std::move(e));
  return BoolExpr(std::make_shared<const Node>(std::move(n)));
}

BoolExpr BoolExpr::all(std::vector<BoolExpr> parts) {
  if (parts.empty()) return constant(true);
  if (parts.size() == 1) return parts[0];
  Node n{Kind::And};
  n.children = std::move(parts);
  return BoolExpr(std::make_shared<const Node>(std::move(n)));
}

BoolExpr BoolExpr::any(std::vector<BoolExpr> parts) {
  if (parts.empty()) return constant(false);
  if (parts.size() == 1) return parts[0];
  Node n{Kind::Or};
  n.children = std::move(parts);
  return BoolExpr(std::make_shared<const Node>(std::move(n)));
}

BoolExpr::Kind BoolExpr::kind() const { return node_->kind; }
bool BoolExpr::value() const { return node_->value; }
const Atom& BoolExpr::atom() const { return node_->atom; }
const std::vector<BoolExpr>& BoolExpr::children() const { return node_->children; }

bool operator==(const BoolExpr& a, const BoolExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case BoolExpr::Kind::Const: return a.value() == b.value();
    case BoolExpr::Kind::Atom: return a.atom() == b.atom();
    default: return a.children() == b.children();
  }
}

namespace {

void collect(const BoolExpr& e, std::vector<Atom>& out) {
  if (e.kind() == BoolExpr::Kind::Atom) {
    out.push_back(e.atom());
    return;
  }
  for (const auto& c : e.children()) collect(c, out);
}

}  // namespace

std::vector<Atom> atoms_of(const BoolExpr& e) {
  std::vector<Atom> out;
  collect(e, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool uses_var(const BoolExpr& e, Var var) {
  if (e.kind() == BoolExpr::Kind::Atom) return e.atom().var == var;
  for (const auto& c : e.children())
    if (uses_var(c, var)) return true;
  return false;
}

BoolExpr simplify(const BoolExpr& e) {
  switch (e.kind()) {
    case BoolExpr::Kind::Const:
    case BoolExpr::Kind::Atom:
      return e;
    case BoolExpr::Kind::Not: {
      BoolExpr c = simplify(e.children()[0]);
      if (c.kind() == BoolExpr::Kind::Const) return BoolExpr::constant(!c.value());
      if (c.kind() == BoolExpr::Kind::Not) return c.children()[0];
      return BoolExpr::negate(c);
    }
    case BoolExpr::Kind::And:
    case BoolExpr::Kind::Or: {
      bool is_and = e.kind() == BoolExpr::Kind::And;
      std::vector<BoolExpr> parts;
      for (const auto& child : e.children()) {
        BoolExpr c = simplify(child);
        if (c.kind() == BoolExpr::Kind::Const) {
          if (c.value() != is_and) return BoolExpr::constant(!is_and);
          continue;
        }
        if (c.kind() == e.kind()) {
          for (const auto& g : c.children()) parts.push_back(g);
          continue;
        }
        parts.push_back(c);
      }
      return is_and ? BoolExpr::all(std::move(parts)) : BoolExpr::any(std::move(parts));
    }
  }
  return e;
}

bool evaluate_assignment(const BoolExpr& e, const std::vector<Atom>& atoms, std::uint64_t assignment) {
  return e.evaluate([&](const Atom& a) {
    auto it = std::lower_bound(atoms.begin(), atoms.end(), a);
    if (it == atoms.end() || !(*it == a)) {
      for (std::size_t k = 0; k < atoms.size(); ++k)
        if (atoms[k] == a) return ((assignment >> k) & 1) == 1;
      return false;
    }
    return ((assignment >> (it - atoms.begin())) & 1) == 1;
  });
}

}  // namespace hardattn::brasp
