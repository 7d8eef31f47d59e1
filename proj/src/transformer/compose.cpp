#include "hardattn/transformer/compose.hpp"

#include "hardattn/core/error.hpp"

namespace hardattn::transformer {

namespace {

Vector concat(const Vector& a, const Vector& b) {
  Vector r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

AttentionHead shift_head(const AttentionHead& h, std::size_t d, std::size_t offset) {
  AttentionHead r;
  r.score = h.score.embedded(d, d, offset, offset);
  r.value = h.value.embedded(d, d, offset, offset);
  r.mask = h.mask;
  r.tiebreak = h.tiebreak;
  if (!h.value_bias.empty()) {
    r.value_bias = zeros(d);
    for (std::size_t k = 0; k < h.value_bias.size(); ++k) r.value_bias[offset + k] = h.value_bias[k];
  }
  return r;
}

}  // namespace

Transformer parallel_compose(const Transformer& t1, const Transformer& t2) {
  if (t1.alphabet() != t2.alphabet()) throw Error("parallel composition needs equal alphabets");
  std::size_t d1 = t1.width(), d2 = t2.width(), d = d1 + d2;
  std::size_t depth = std::max(t1.depth(), t2.depth());

  std::vector<Vector> emb;
  for (std::size_t a = 0; a < t1.alphabet().size(); ++a) emb.push_back(concat(t1.embedding()[a], t2.embedding()[a]));
  std::vector<PositionSpec> positions = t1.positions();
  for (auto p : t2.positions()) {
    p.offset += d1;
    positions.push_back(std::move(p));
  }

  std::vector<Layer> layers;
  for (std::size_t l = 0; l < depth; ++l) {
    Layer a = l < t1.depth() ? t1.layers()[l] : identity_layer(d1);
    Layer b = l < t2.depth() ? t2.layers()[l] : identity_layer(d2);
    if (a.attention_norm || a.ffn_norm || b.attention_norm || b.ffn_norm)
      throw Error("parallel composition of layers with layernorm is not supported");
    Layer m;
    for (const auto& h : a.heads) m.heads.push_back(shift_head(h, d, 0));
    for (const auto& h : b.heads) m.heads.push_back(shift_head(h, d, d1));
    std::size_t h1 = a.ffn.hidden(), h2 = b.ffn.hidden();
    m.ffn.w1 = Matrix(h1 + h2, d);
    m.ffn.w2 = Matrix(d, h1 + h2);
    for (const auto& e : a.ffn.w1.entries()) m.ffn.w1.set(e.row, e.col, e.value);
    for (const auto& e : b.ffn.w1.entries()) m.ffn.w1.set(h1 + e.row, d1 + e.col, e.value);
    for (const auto& e : a.ffn.w2.entries()) m.ffn.w2.set(e.row, e.col, e.value);
    for (const auto& e : b.ffn.w2.entries()) m.ffn.w2.set(d1 + e.row, h1 + e.col, e.value);
    m.ffn.b1 = concat(a.ffn.b1, b.ffn.b1);
    m.ffn.b2 = concat(a.ffn.b2, b.ffn.b2);
    layers.push_back(std::move(m));
  }

  std::optional<OutputLayer> out;
  if (t1.output()) {
    out = OutputLayer{concat(t1.output()->weights, zeros(d2)), t1.output()->bias};
  } else if (t2.output()) {
    out = OutputLayer{concat(zeros(d1), t2.output()->weights), t2.output()->bias};
  }
  std::vector<std::string> names;
  if (!t1.coordinate_names().empty() || !t2.coordinate_names().empty()) {
    for (std::size_t k = 0; k < d1; ++k)
      names.push_back(t1.coordinate_names().empty() ? "left" + std::to_string(k) : t1.coordinate_names()[k]);
    for (std::size_t k = 0; k < d2; ++k)
      names.push_back(t2.coordinate_names().empty() ? "right" + std::to_string(k) : t2.coordinate_names()[k]);
  }
  return Transformer(t1.alphabet(), d, std::move(emb), std::move(positions), std::move(layers), std::move(out),
                     std::move(names));
}

}  // namespace hardattn::transformer
