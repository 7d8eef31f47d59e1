#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hardattn/core/alphabet.hpp"
#include "hardattn/core/mask.hpp"
#include "hardattn/core/rational.hpp"

namespace hardattn::transformer {

using Vector = std::vector<Rational>;

Vector zeros(std::size_t n);

/// Sparse exact matrix. Entries are kept sorted by (row, col) with no zeros.
class Matrix {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    Rational value;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Entry>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  Rational at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& v);
  void add(std::size_t r, std::size_t c, const Rational& v);

  /// M x.
  Vector apply(const Vector& x) const;
  /// x^T M y.
  Rational bilinear(const Vector& x, const Vector& y) const;
  /// Rows / columns holding a non-zero entry, ascending.
  std::vector<std::size_t> row_support() const;
  std::vector<std::size_t> col_support() const;

  /// Copy of this matrix placed at (row_offset, col_offset) in a larger one.
  Matrix embedded(std::size_t rows, std::size_t cols, std::size_t row_offset, std::size_t col_offset) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Entry> entries_;
};

/// f_S(x, y) = x^T score y; f_V(x) = value x + value_bias.
struct AttentionHead {
  Matrix score;
  MaskKind mask = MaskKind::None;
  Direction tiebreak = Direction::Rightmost;
  Matrix value;
  Vector value_bias;  // empty when the value map is linear

  friend bool operator==(const AttentionHead&, const AttentionHead&) = default;
};

/// ffn(x) = w2 relu(w1 x + b1) + b2.
struct FeedForward {
  Matrix w1;
  Vector b1;
  Matrix w2;
  Vector b2;

  std::size_t hidden() const { return w1.rows(); }
  friend bool operator==(const FeedForward&, const FeedForward&) = default;
};

/// gamma * (x - mean) / sqrt(var) + beta, computed exactly.
struct LayerNorm {
  Vector gamma;
  Vector beta;

  friend bool operator==(const LayerNorm&, const LayerNorm&) = default;
};

/// Sublayers with residual connections; norms apply to each residual sum.
struct Layer {
  std::vector<AttentionHead> heads;
  FeedForward ffn;
  std::optional<LayerNorm> attention_norm;
  std::optional<LayerNorm> ffn_norm;

  friend bool operator==(const Layer&, const Layer&) = default;
};

/// Position embedding added to the word embedding starting at coordinate
/// offset. With paired set, coordinate k is added at offset + 2k and
/// subtracted at offset + 2k + 1.
struct PositionSpec {
  enum class Kind { Sinusoidal, Predicates };
  Kind kind = Kind::Predicates;
  std::vector<Rational> frequencies;
  std::vector<std::string> families;
  std::size_t offset = 0;
  bool paired = false;

  std::size_t dim() const { return kind == Kind::Sinusoidal ? 2 * frequencies.size() : families.size(); }
  std::size_t span() const { return paired ? 2 * dim() : dim(); }
  friend bool operator==(const PositionSpec&, const PositionSpec&) = default;
};

/// Accept iff weights . x_n + bias >= 0.
struct OutputLayer {
  Vector weights;
  Rational bias;

  friend bool operator==(const OutputLayer&, const OutputLayer&) = default;
};

class Transformer {
 public:
  Transformer(Alphabet alphabet, std::size_t width, std::vector<Vector> embedding,
              std::vector<PositionSpec> positions, std::vector<Layer> layers,
              std::optional<OutputLayer> output, std::vector<std::string> coordinate_names = {});

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t width() const { return width_; }
  std::size_t depth() const { return layers_.size(); }
  const std::vector<Vector>& embedding() const { return embedding_; }
  const std::vector<PositionSpec>& positions() const { return positions_; }
  const std::vector<Layer>& layers() const { return layers_; }
  const std::optional<OutputLayer>& output() const { return output_; }
  /// Optional documentation of what each coordinate holds.
  const std::vector<std::string>& coordinate_names() const { return names_; }

  friend bool operator==(const Transformer&, const Transformer&) = default;

 private:
  Alphabet alphabet_;
  std::size_t width_;
  std::vector<Vector> embedding_;
  std::vector<PositionSpec> positions_;
  std::vector<Layer> layers_;
  std::optional<OutputLayer> output_;
  std::vector<std::string> names_;
};

/// A layer with one zero head and an empty FFN: the identity on activations.
Layer identity_layer(std::size_t width);

}  // namespace hardattn::transformer
