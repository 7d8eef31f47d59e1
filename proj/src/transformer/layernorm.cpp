#include "hardattn/transformer/layernorm.hpp"

#include "hardattn/core/error.hpp"

namespace hardattn::transformer {

namespace {

bool is_bit(const Rational& r) { return r.is_zero() || r == Rational(1); }

/// Columns c read from column 2c when encode_cols is set. Rows r become rows
/// 2r (sign +1) and 2r+1 (sign -1) when encode_rows is set.
Matrix encode(const Matrix& m, bool encode_rows, bool encode_cols) {
  Matrix r(encode_rows ? 2 * m.rows() : m.rows(), encode_cols ? 2 * m.cols() : m.cols());
  for (const auto& e : m.entries()) {
    std::size_t col = encode_cols ? 2 * e.col : e.col;
    if (encode_rows) {
      r.set(2 * e.row, col, e.value);
      r.set(2 * e.row + 1, col, -e.value);
    } else {
      r.set(e.row, col, e.value);
    }
  }
  return r;
}

Matrix score_of(const Matrix& m) {
  Matrix r(2 * m.rows(), 2 * m.cols());
  for (const auto& e : m.entries()) r.set(2 * e.row, 2 * e.col, e.value);
  return r;
}

Vector encode_shift(const Vector& v) {
  Vector r;
  for (const auto& x : v) {
    r.push_back(x);
    r.push_back(-x);
  }
  return r;
}

}  // namespace

Vector decode_pairs(const Vector& encoded) {
  Vector r;
  for (std::size_t k = 0; k < encoded.size(); k += 2) r.push_back(encoded[k]);
  return r;
}

Transformer apply_layernorm_encoding(const Transformer& t) {
  std::size_t d = t.width();
  std::vector<Vector> emb;
  for (const auto& e : t.embedding()) {
    Vector r;
    for (const auto& x : e) {
      if (!is_bit(x)) throw Error("layernorm encoding needs a Boolean transformer; embedding value " + x.str());
      r.push_back(x);
      r.push_back(Rational(1) - x);
    }
    emb.push_back(std::move(r));
  }
  std::vector<PositionSpec> positions;
  for (auto p : t.positions()) {
    if (p.kind != PositionSpec::Kind::Predicates || p.paired)
      throw Error("layernorm encoding needs Boolean position embeddings");
    p.offset *= 2;
    p.paired = true;
    positions.push_back(std::move(p));
  }
  LayerNorm identity{Vector(2 * d, Rational(1, 2)), Vector(2 * d, Rational(1, 2))};
  std::vector<Layer> layers;
  for (const Layer& l : t.layers()) {
    if (l.attention_norm || l.ffn_norm) throw Error("transformer already has layernorms");
    Layer m;
    for (const auto& h : l.heads) {
      if (!h.value_bias.empty()) throw Error("layernorm encoding does not support value biases");
      m.heads.push_back(AttentionHead{score_of(h.score), h.mask, h.tiebreak,
                                      encode(h.value, true, true), {}});
    }
    m.ffn.w1 = encode(l.ffn.w1, false, true);
    m.ffn.b1 = l.ffn.b1;
    m.ffn.w2 = encode(l.ffn.w2, true, false);
    m.ffn.b2 = encode_shift(l.ffn.b2);
    m.attention_norm = identity;
    m.ffn_norm = identity;
    layers.push_back(std::move(m));
  }
  std::optional<OutputLayer> out;
  if (t.output()) {
    Vector w;
    for (const auto& x : t.output()->weights) {
      w.push_back(x);
      w.push_back(Rational(0));
    }
    out = OutputLayer{std::move(w), t.output()->bias};
  }
  std::vector<std::string> names;
  for (const auto& n : t.coordinate_names()) {
    names.push_back(n);
    names.push_back("!" + n);
  }
  return Transformer(t.alphabet(), 2 * d, std::move(emb), std::move(positions), std::move(layers), std::move(out),
                     std::move(names));
}

}  // namespace hardattn::transformer
