#include "hardattn/ltl/formula.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

namespace hardattn::ltl {

Formula::Formula() : Formula(constant(false)) {}

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula Formula::constant(bool value) {
  static const Formula zero(std::make_shared<const Node>(Node{Kind::Const, false}));
  static const Formula one(std::make_shared<const Node>(Node{Kind::Const, true}));
  return value ? one : zero;
}

Formula Formula::symbol(std::string name) {
  return Formula(std::make_shared<const Node>(Node{Kind::Symbol, false, true, std::move(name), {}}));
}

Formula Formula::predicate(std::string family) {
  return Formula(std::make_shared<const Node>(Node{Kind::Predicate, false, true, std::move(family), {}}));
}

Formula Formula::negate(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, false, true, {}, {std::move(f)}}));
}

Formula Formula::all(std::vector<Formula> parts) {
  if (parts.empty()) return constant(true);
  if (parts.size() == 1) return parts[0];
  return Formula(std::make_shared<const Node>(Node{Kind::And, false, true, {}, std::move(parts)}));
}

Formula Formula::any(std::vector<Formula> parts) {
  if (parts.empty()) return constant(false);
  if (parts.size() == 1) return parts[0];
  return Formula(std::make_shared<const Node>(Node{Kind::Or, false, true, {}, std::move(parts)}));
}

Formula Formula::since(Formula lhs, Formula rhs, bool strict) {
  return Formula(std::make_shared<const Node>(Node{Kind::Since, false, strict, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::until(Formula lhs, Formula rhs, bool strict) {
  return Formula(std::make_shared<const Node>(Node{Kind::Until, false, strict, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula::Kind Formula::kind() const { return node_->kind; }
bool Formula::value() const { return node_->value; }
const std::string& Formula::name() const { return node_->name; }
bool Formula::strict() const { return node_->strict; }
const std::vector<Formula>& Formula::children() const { return node_->children; }

bool operator==(const Formula& a, const Formula& b) {
  StructuralIds ids;
  return ids.id(a) == ids.id(b);
}

struct StructuralIds::Impl {
  using Key = std::tuple<int, bool, bool, std::string, std::vector<std::size_t>>;
  std::unordered_map<const void*, std::size_t> by_node;
  std::map<Key, std::size_t> table;
  std::vector<Formula> keep_alive;
};

StructuralIds::StructuralIds() : impl_(std::make_unique<Impl>()) {}
StructuralIds::~StructuralIds() = default;

std::size_t StructuralIds::count() const { return impl_->table.size(); }

std::size_t StructuralIds::id(const Formula& f) {
  auto it = impl_->by_node.find(f.id());
  if (it != impl_->by_node.end()) return it->second;
  std::vector<std::size_t> kids;
  for (const auto& c : f.children()) kids.push_back(id(c));
  Impl::Key key{static_cast<int>(f.kind()), f.value(), f.strict(), f.name(), std::move(kids)};
  auto [pos, inserted] = impl_->table.emplace(std::move(key), impl_->table.size());
  impl_->by_node.emplace(f.id(), pos->second);
  impl_->keep_alive.push_back(f);
  return pos->second;
}

namespace {

template <class T, class Fn>
T memo_fold(const Formula& f, std::unordered_map<const void*, T>& memo, const Fn& fn) {
  auto it = memo.find(f.id());
  if (it != memo.end()) return it->second;
  std::vector<T> kids;
  for (const auto& c : f.children()) kids.push_back(memo_fold(c, memo, fn));
  T v = fn(f, kids);
  memo.emplace(f.id(), v);
  return v;
}

}  // namespace

std::size_t temporal_depth(const Formula& f) {
  std::unordered_map<const void*, std::size_t> memo;
  return memo_fold<std::size_t>(f, memo, [](const Formula& g, const std::vector<std::size_t>& kids) {
    std::size_t d = kids.empty() ? 0 : *std::max_element(kids.begin(), kids.end());
    return g.is_temporal() ? d + 1 : d;
  });
}

std::size_t dag_size(const Formula& f) {
  StructuralIds ids;
  ids.id(f);
  return ids.count();
}

std::uint64_t tree_size(const Formula& f) {
  std::unordered_map<const void*, std::uint64_t> memo;
  return memo_fold<std::uint64_t>(f, memo, [](const Formula&, const std::vector<std::uint64_t>& kids) {
    constexpr std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 1;
    for (auto k : kids) total = (cap - total < k) ? cap : total + k;
    return total;
  });
}

bool contains_until(const Formula& f) {
  std::unordered_map<const void*, bool> memo;
  return memo_fold<bool>(f, memo, [](const Formula& g, const std::vector<bool>& kids) {
    if (g.kind() == Formula::Kind::Until) return true;
    return std::find(kids.begin(), kids.end(), true) != kids.end();
  });
}

bool is_since_only(const Formula& f) {
  std::unordered_map<const void*, bool> memo;
  return memo_fold<bool>(f, memo, [](const Formula& g, const std::vector<bool>& kids) {
    if (g.kind() == Formula::Kind::Until) return false;
    if (g.kind() == Formula::Kind::Since && !g.strict()) return false;
    return std::find(kids.begin(), kids.end(), false) == kids.end();
  });
}

Formula to_nonstrict(const Formula& f) {
  std::unordered_map<const void*, Formula> memo;
  return memo_fold<Formula>(f, memo, [](const Formula& g, const std::vector<Formula>& kids) {
    switch (g.kind()) {
      case Formula::Kind::Not: return Formula::negate(kids[0]);
      case Formula::Kind::And: return Formula::all(kids);
      case Formula::Kind::Or: return Formula::any(kids);
      case Formula::Kind::Since: return Formula::since(kids[0], kids[1], false);
      case Formula::Kind::Until: return Formula::until(kids[0], kids[1], false);
      default: return g;
    }
  });
}

namespace {

std::vector<std::string> names_of(const Formula& f, Formula::Kind kind) {
  std::set<std::string> out;
  std::unordered_map<const void*, bool> memo;
  memo_fold<bool>(f, memo, [&](const Formula& g, const std::vector<bool>&) {
    if (g.kind() == kind) out.insert(g.name());
    return true;
  });
  return {out.begin(), out.end()};
}

}  // namespace

std::vector<std::string> symbols_of(const Formula& f) { return names_of(f, Formula::Kind::Symbol); }
std::vector<std::string> predicates_of(const Formula& f) { return names_of(f, Formula::Kind::Predicate); }

}  // namespace hardattn::ltl
