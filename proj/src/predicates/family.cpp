#include "hardattn/predicates/family.hpp"

#include <map>
#include <memory>
#include <sstream>
#include <utility>

namespace hardattn::predicates {

PredicateFamily::PredicateFamily(std::string name, Evaluator eval)
    : name_(std::move(name)), eval_(std::move(eval)) {
  if (!eval_) throw Error("predicate family '" + name_ + "' has no evaluator");
}

bool PredicateFamily::operator()(std::size_t n, std::size_t i) const {
  if (i < 1 || i > n)
    throw Error("position " + std::to_string(i) + " out of range for length " + std::to_string(n));
  return eval_(n, i);
}

PredicateFamily mod_predicate(unsigned r, unsigned m) {
  if (m == 0) throw Error("MOD modulus must be positive");
  if (r >= m) throw Error("MOD residue must be smaller than the modulus");
  std::string name = "MOD[" + std::to_string(r) + "," + std::to_string(m) + "]";
  return PredicateFamily(name, [r, m](std::size_t, std::size_t i) { return i % m == r; });
}

PredicateFamily mid_predicate() {
  return PredicateFamily("Mid", [](std::size_t n, std::size_t i) {
    return n % 2 == 1 && i == (n + 1) / 2;
  });
}

namespace {

std::optional<unsigned> parse_unsigned(std::string_view s) {
  if (s.empty() || s.size() > 9) return std::nullopt;
  unsigned v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  return v;
}

}  // namespace

std::optional<PredicateFamily> builtin_family(std::string_view name) {
  if (name == "Mid") return mid_predicate();
  if (name.size() > 5 && name.substr(0, 4) == "MOD[" && name.back() == ']') {
    auto inner = name.substr(4, name.size() - 5);
    auto comma = inner.find(',');
    if (comma == std::string_view::npos) return std::nullopt;
    auto r = parse_unsigned(inner.substr(0, comma));
    auto m = parse_unsigned(inner.substr(comma + 1));
    if (!r || !m || *m == 0 || *r >= *m) return std::nullopt;
    return mod_predicate(*r, *m);
  }
  return std::nullopt;
}

PredicateFamily load_table_family(std::string name, std::string_view text) {
  auto table = std::make_shared<std::map<std::pair<std::size_t, std::size_t>, bool>>();
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::size_t n, i;
    int bit;
    if (!(fields >> n)) continue;
    if (!(fields >> i >> bit) || (bit != 0 && bit != 1) || i < 1 || i > n)
      throw ParseError("expected 'n i bit' with 1 <= i <= n and bit in {0,1}", lineno, 0);
    (*table)[{n, i}] = bit == 1;
  }
  std::string label = name;
  return PredicateFamily(std::move(name), [table, label](std::size_t n, std::size_t i) {
    auto it = table->find({n, i});
    if (it == table->end())
      throw Error("predicate table '" + label + "' has no entry for n=" + std::to_string(n) +
                  ", i=" + std::to_string(i));
    return it->second;
  });
}

PredicateBindings::PredicateBindings(std::vector<PredicateFamily> families) {
  for (auto& f : families) bind(std::move(f));
}

void PredicateBindings::bind(PredicateFamily family) {
  std::string key = family.name();
  families_.insert_or_assign(std::move(key), std::move(family));
}

PredicateFamily PredicateBindings::resolve(std::string_view name) const {
  auto it = families_.find(name);
  if (it != families_.end()) return it->second;
  if (auto f = builtin_family(name)) return *f;
  throw Error("unbound predicate family '" + std::string(name) + "'");
}

bool PredicateBindings::can_resolve(std::string_view name) const {
  return families_.find(name) != families_.end() || builtin_family(name).has_value();
}

std::vector<std::vector<bool>> predicate_table(const std::vector<std::string>& families,
                                               std::size_t n,
                                               const PredicateBindings& bindings) {
  std::vector<std::vector<bool>> out;
  out.reserve(families.size());
  for (const auto& name : families) {
    PredicateFamily f = bindings.resolve(name);
    std::vector<bool> row(n);
    for (std::size_t i = 1; i <= n; ++i) row[i - 1] = f(n, i);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace hardattn::predicates
