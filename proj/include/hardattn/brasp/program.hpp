#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hardattn/brasp/expr.hpp"
#include "hardattn/core/alphabet.hpp"
#include "hardattn/core/mask.hpp"

namespace hardattn::brasp {

struct Positionwise {
  BoolExpr expr;
};

struct Attention {
  Direction direction = Direction::Rightmost;
  MaskKind mask = MaskKind::None;
  BoolExpr score;
  BoolExpr value;
  BoolExpr fallback;  // the default D(i)
};

struct Operation {
  std::string name;
  std::variant<Positionwise, Attention> body;

  bool is_attention() const { return std::holds_alternative<Attention>(body); }
  const Attention& attention() const { return std::get<Attention>(body); }
  const Positionwise& positionwise() const { return std::get<Positionwise>(body); }
};

struct AcceptOutput {
  std::size_t vector;
};

/// Output symbol -> vector index.
struct TransduceOutput {
  std::vector<std::pair<std::string, std::size_t>> map;
};

using Output = std::variant<AcceptOutput, TransduceOutput>;

/// A B-RASP program. Vectors 0..|alphabet|-1 are Q_a; operation k defines
/// vector |alphabet|+k.
class Program {
 public:
  Program(Alphabet alphabet, std::vector<std::string> predicate_families,
          std::vector<Operation> ops, Output output);

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<std::string>& predicate_families() const { return predicates_; }
  const std::vector<Operation>& ops() const { return ops_; }
  const Output& output() const { return output_; }

  bool is_acceptor() const { return std::holds_alternative<AcceptOutput>(output_); }
  std::size_t output_vector() const;

  std::size_t num_vectors() const { return alphabet_.size() + ops_.size(); }
  std::string vector_name(std::size_t index) const;
  std::optional<std::size_t> find_vector(const std::string& name) const;
  /// Operation defining vector t; nullptr for Q_a.
  const Operation* op_of(std::size_t vector) const;

  friend bool operator==(const Program& a, const Program& b);

 private:
  Alphabet alphabet_;
  std::vector<std::string> predicates_;
  std::vector<Operation> ops_;
  Output output_;
};

/// Incremental construction with fresh-name generation.
class ProgramBuilder {
 public:
  explicit ProgramBuilder(Alphabet alphabet);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t q(Symbol s) const { return s; }
  std::size_t q(const std::string& symbol) const { return alphabet_.index_of(symbol); }
  /// Index of a predicate family, registering it on first use.
  std::size_t predicate(const std::string& family);
  void set_predicates(std::vector<std::string> families) { predicates_ = std::move(families); }

  std::size_t positionwise(const std::string& name, BoolExpr expr);
  std::size_t attention(const std::string& name, Direction dir, MaskKind mask, BoolExpr score,
                        BoolExpr value, BoolExpr fallback);
  std::size_t add(Operation op);

  /// Name not yet used or reserved, derived from base.
  std::string fresh(const std::string& base);
  /// Keeps fresh() from handing out a name that will be defined later.
  void reserve(const std::string& name) { reserved_.push_back(name); }
  bool has_name(const std::string& name) const;
  std::size_t num_vectors() const { return alphabet_.size() + ops_.size(); }
  const std::vector<Operation>& ops() const { return ops_; }

  Program accept(std::size_t vector) &&;
  Program transduce(std::vector<std::pair<std::string, std::size_t>> map) &&;
  Program finish(Output output) &&;

 private:
  Alphabet alphabet_;
  std::vector<std::string> predicates_;
  std::vector<Operation> ops_;
  std::vector<std::string> names_;
  std::vector<std::string> reserved_;
};

/// Replaces every strict mask by its non-strict counterpart.
Program to_nonstrict(const Program& prog);

/// True when no attention operation uses a strict mask.
bool uses_only_nonstrict_masks(const Program& prog);

}  // namespace hardattn::brasp
