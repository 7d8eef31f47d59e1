#include "hardattn/transformer/model.hpp"

#include <algorithm>
#include <set>

#include "hardattn/core/error.hpp"

namespace hardattn::transformer {

Vector zeros(std::size_t n) { return Vector(n, Rational(0)); }

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m.entries_.push_back({k, k, Rational(1)});
  return m;
}

namespace {

auto entry_less = [](const Matrix::Entry& e, std::pair<std::size_t, std::size_t> key) {
  return std::make_pair(e.row, e.col) < key;
};

}  // namespace

Rational Matrix::at(std::size_t r, std::size_t c) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::make_pair(r, c), entry_less);
  if (it != entries_.end() && it->row == r && it->col == c) return it->value;
  return Rational(0);
}

void Matrix::set(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw Error("matrix index out of range");
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::make_pair(r, c), entry_less);
  bool present = it != entries_.end() && it->row == r && it->col == c;
  if (v.is_zero()) {
    if (present) entries_.erase(it);
  } else if (present) {
    it->value = v;
  } else {
    entries_.insert(it, Entry{r, c, v});
  }
}

void Matrix::add(std::size_t r, std::size_t c, const Rational& v) { set(r, c, at(r, c) + v); }

Vector Matrix::apply(const Vector& x) const {
  if (x.size() != cols_) throw Error("width mismatch in matrix product");
  Vector y = zeros(rows_);
  for (const auto& e : entries_)
    if (!x[e.col].is_zero()) y[e.row] += e.value * x[e.col];
  return y;
}

Rational Matrix::bilinear(const Vector& x, const Vector& y) const {
  if (x.size() != rows_ || y.size() != cols_) throw Error("width mismatch in bilinear form");
  Rational s;
  for (const auto& e : entries_)
    if (!x[e.row].is_zero() && !y[e.col].is_zero()) s += x[e.row] * e.value * y[e.col];
  return s;
}

std::vector<std::size_t> Matrix::row_support() const {
  std::set<std::size_t> s;
  for (const auto& e : entries_) s.insert(e.row);
  return {s.begin(), s.end()};
}

std::vector<std::size_t> Matrix::col_support() const {
  std::set<std::size_t> s;
  for (const auto& e : entries_) s.insert(e.col);
  return {s.begin(), s.end()};
}

Matrix Matrix::embedded(std::size_t rows, std::size_t cols, std::size_t row_offset,
                        std::size_t col_offset) const {
  if (row_offset + rows_ > rows || col_offset + cols_ > cols) throw Error("embedded matrix does not fit");
  Matrix m(rows, cols);
  for (const auto& e : entries_) m.entries_.push_back({e.row + row_offset, e.col + col_offset, e.value});
  return m;
}

namespace {

void check_vector(const Vector& v, std::size_t n, const std::string& what) {
  if (v.size() != n) throw Error(what + " has length " + std::to_string(v.size()) + ", expected " + std::to_string(n));
}

void check_matrix(const Matrix& m, std::size_t r, std::size_t c, const std::string& what) {
  if (m.rows() != r || m.cols() != c)
    throw Error(what + " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                std::to_string(r) + "x" + std::to_string(c));
}

}  // namespace

Transformer::Transformer(Alphabet alphabet, std::size_t width, std::vector<Vector> embedding,
                         std::vector<PositionSpec> positions, std::vector<Layer> layers,
                         std::optional<OutputLayer> output, std::vector<std::string> coordinate_names)
    : alphabet_(std::move(alphabet)),
      width_(width),
      embedding_(std::move(embedding)),
      positions_(std::move(positions)),
      layers_(std::move(layers)),
      output_(std::move(output)),
      names_(std::move(coordinate_names)) {
  if (embedding_.size() != alphabet_.size()) throw Error("embedding table does not cover the alphabet");
  for (const auto& e : embedding_) check_vector(e, width_, "embedding");
  for (const auto& p : positions_) {
    if (p.offset + p.span() > width_) throw Error("position embedding exceeds the width");
    if (p.kind == PositionSpec::Kind::Sinusoidal && !p.families.empty())
      throw Error("sinusoidal position embedding lists predicate families");
  }
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    std::string where = "layer " + std::to_string(l + 1);
    if (layer.heads.empty()) throw Error(where + " has no attention heads");
    for (const auto& h : layer.heads) {
      check_matrix(h.score, width_, width_, where + " score matrix");
      check_matrix(h.value, width_, width_, where + " value matrix");
      if (!h.value_bias.empty()) check_vector(h.value_bias, width_, where + " value bias");
    }
    const FeedForward& f = layer.ffn;
    check_matrix(f.w1, f.w1.rows(), width_, where + " W1");
    check_vector(f.b1, f.w1.rows(), where + " b1");
    check_matrix(f.w2, width_, f.w1.rows(), where + " W2");
    check_vector(f.b2, width_, where + " b2");
    for (const auto* norm : {&layer.attention_norm, &layer.ffn_norm})
      if (*norm) {
        check_vector((*norm)->gamma, width_, where + " layernorm gamma");
        check_vector((*norm)->beta, width_, where + " layernorm beta");
      }
  }
  if (output_) check_vector(output_->weights, width_, "output weights");
  if (!names_.empty() && names_.size() != width_) throw Error("coordinate names do not match the width");
}

Layer identity_layer(std::size_t width) {
  Layer layer;
  layer.heads.push_back(AttentionHead{Matrix(width, width), MaskKind::None, Direction::Rightmost,
                                      Matrix(width, width), {}});
  layer.ffn = FeedForward{Matrix(0, width), {}, Matrix(width, 0), zeros(width)};
  return layer;
}

}  // namespace hardattn::transformer
