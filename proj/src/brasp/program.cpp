#include "hardattn/brasp/program.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace hardattn::brasp {

namespace {

bool valid_name(const std::string& name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') return false;
  for (char c : name)
    if (!is_name_char(c)) return false;
  return true;
}

void check_expr(const BoolExpr& e, std::size_t limit, std::size_t num_predicates, bool allow_j,
                const std::string& where) {
  for (const Atom& a : atoms_of(e)) {
    if (a.var == Var::J && !allow_j) throw Error(where + " may not read position j");
    if (a.kind == Atom::Kind::Vector && a.index >= limit)
      throw Error(where + " refers to a vector that is not defined before it");
    if (a.kind == Atom::Kind::Predicate && a.index >= num_predicates)
      throw Error(where + " refers to an undeclared predicate family");
  }
}

bool same_op(const Operation& a, const Operation& b) {
  if (a.name != b.name || a.body.index() != b.body.index()) return false;
  if (!a.is_attention()) return a.positionwise().expr == b.positionwise().expr;
  const Attention& x = a.attention();
  const Attention& y = b.attention();
  return x.direction == y.direction && x.mask == y.mask && x.score == y.score && x.value == y.value &&
         x.fallback == y.fallback;
}

}  // namespace

Program::Program(Alphabet alphabet, std::vector<std::string> predicate_families,
                 std::vector<Operation> ops, Output output)
    : alphabet_(std::move(alphabet)),
      predicates_(std::move(predicate_families)),
      ops_(std::move(ops)),
      output_(std::move(output)) {
  if (alphabet_.empty()) throw Error("program alphabet must not be empty");
  std::set<std::string> names;
  for (const auto& s : alphabet_.symbols()) names.insert("Q_" + s);
  std::set<std::string> preds;
  for (const auto& p : predicates_)
    if (!preds.insert(p).second) throw Error("duplicate predicate family '" + p + "'");
  for (std::size_t k = 0; k < ops_.size(); ++k) {
    const Operation& op = ops_[k];
    if (!valid_name(op.name)) throw Error("invalid vector name '" + op.name + "'");
    if (!names.insert(op.name).second) throw Error("vector name '" + op.name + "' is already defined");
    std::size_t limit = alphabet_.size() + k;
    std::string where = "operation " + op.name;
    if (op.is_attention()) {
      const Attention& att = op.attention();
      check_expr(att.score, limit, predicates_.size(), true, where + " score");
      check_expr(att.value, limit, predicates_.size(), true, where + " value");
      check_expr(att.fallback, limit, predicates_.size(), false, where + " default");
    } else {
      check_expr(op.positionwise().expr, limit, predicates_.size(), false, where);
    }
  }
  if (auto* acc = std::get_if<AcceptOutput>(&output_)) {
    if (acc->vector >= num_vectors()) throw Error("output vector does not exist");
  } else {
    const auto& map = std::get<TransduceOutput>(output_).map;
    if (map.empty()) throw Error("transduction needs at least one output symbol");
    std::set<std::string> seen;
    for (const auto& [sym, vec] : map) {
      if (!is_valid_symbol(sym)) throw Error("invalid output symbol '" + sym + "'");
      if (!seen.insert(sym).second) throw Error("duplicate output symbol '" + sym + "'");
      if (vec >= num_vectors()) throw Error("output vector for '" + sym + "' does not exist");
    }
  }
}

std::size_t Program::output_vector() const {
  if (!is_acceptor()) throw Error("program is a transducer, not an acceptor");
  return std::get<AcceptOutput>(output_).vector;
}

std::string Program::vector_name(std::size_t index) const {
  if (index < alphabet_.size()) return "Q_" + alphabet_.symbol(index);
  if (index >= num_vectors()) throw Error("vector index out of range");
  return ops_[index - alphabet_.size()].name;
}

std::optional<std::size_t> Program::find_vector(const std::string& name) const {
  for (std::size_t t = 0; t < num_vectors(); ++t)
    if (vector_name(t) == name) return t;
  return std::nullopt;
}

const Operation* Program::op_of(std::size_t vector) const {
  if (vector < alphabet_.size() || vector >= num_vectors()) return nullptr;
  return &ops_[vector - alphabet_.size()];
}

bool operator==(const Program& a, const Program& b) {
  if (!(a.alphabet_ == b.alphabet_) || a.predicates_ != b.predicates_ || a.ops_.size() != b.ops_.size())
    return false;
  for (std::size_t k = 0; k < a.ops_.size(); ++k)
    if (!same_op(a.ops_[k], b.ops_[k])) return false;
  if (a.output_.index() != b.output_.index()) return false;
  if (a.is_acceptor()) return a.output_vector() == b.output_vector();
  return std::get<TransduceOutput>(a.output_).map == std::get<TransduceOutput>(b.output_).map;
}

ProgramBuilder::ProgramBuilder(Alphabet alphabet) : alphabet_(std::move(alphabet)) {
  for (const auto& s : alphabet_.symbols()) names_.push_back("Q_" + s);
}

std::size_t ProgramBuilder::predicate(const std::string& family) {
  for (std::size_t k = 0; k < predicates_.size(); ++k)
    if (predicates_[k] == family) return k;
  predicates_.push_back(family);
  return predicates_.size() - 1;
}

std::size_t ProgramBuilder::positionwise(const std::string& name, BoolExpr expr) {
  return add(Operation{name, Positionwise{std::move(expr)}});
}

std::size_t ProgramBuilder::attention(const std::string& name, Direction dir, MaskKind mask,
                                      BoolExpr score, BoolExpr value, BoolExpr fallback) {
  return add(Operation{name, Attention{dir, mask, std::move(score), std::move(value), std::move(fallback)}});
}

std::size_t ProgramBuilder::add(Operation op) {
  if (has_name(op.name)) throw Error("vector name '" + op.name + "' is already defined");
  names_.push_back(op.name);
  ops_.push_back(std::move(op));
  return num_vectors() - 1;
}

bool ProgramBuilder::has_name(const std::string& name) const {
  for (const auto& n : names_)
    if (n == name) return true;
  return false;
}

std::string ProgramBuilder::fresh(const std::string& base) {
  auto taken = [&](const std::string& n) {
    return has_name(n) || std::find(reserved_.begin(), reserved_.end(), n) != reserved_.end();
  };
  if (!taken(base)) return base;
  for (std::size_t k = 1;; ++k) {
    std::string candidate = base + "_" + std::to_string(k);
    if (!taken(candidate)) return candidate;
  }
}

Program ProgramBuilder::accept(std::size_t vector) && { return std::move(*this).finish(AcceptOutput{vector}); }

Program ProgramBuilder::transduce(std::vector<std::pair<std::string, std::size_t>> map) && {
  return std::move(*this).finish(TransduceOutput{std::move(map)});
}

Program ProgramBuilder::finish(Output output) && {
  return Program(std::move(alphabet_), std::move(predicates_), std::move(ops_), std::move(output));
}

Program to_nonstrict(const Program& prog) {
  std::vector<Operation> ops = prog.ops();
  for (auto& op : ops)
    if (auto* att = std::get_if<Attention>(&op.body)) att->mask = nonstrict_of(att->mask);
  return Program(prog.alphabet(), prog.predicate_families(), std::move(ops), prog.output());
}

bool uses_only_nonstrict_masks(const Program& prog) {
  for (const auto& op : prog.ops())
    if (op.is_attention() && is_strict(op.attention().mask)) return false;
  return true;
}

}  // namespace hardattn::brasp
