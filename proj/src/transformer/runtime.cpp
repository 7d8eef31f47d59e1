#include "hardattn/transformer/runtime.hpp"

#include "hardattn/core/error.hpp"
#include "hardattn/predicates/position_embedding.hpp"

namespace hardattn::transformer {

namespace {

predicates::PositionEmbedding make_pe(const PositionSpec& spec, const predicates::PredicateBindings& bindings) {
  if (spec.kind == PositionSpec::Kind::Sinusoidal) return predicates::sinusoidal_pe(spec.frequencies);
  std::vector<predicates::PredicateFamily> families;
  for (const auto& name : spec.families) families.push_back(bindings.resolve(name));
  return predicates::predicate_pe(std::move(families));
}

void add_in_place(Vector& x, const Vector& y) {
  for (std::size_t k = 0; k < x.size(); ++k)
    if (!y[k].is_zero()) x[k] += y[k];
}

}  // namespace

std::vector<Vector> embed(const Transformer& t, const Word& w, const predicates::PredicateBindings& bindings) {
  if (w.empty()) throw Error("input must be non-empty");
  std::vector<Vector> x;
  x.reserve(w.size());
  for (Symbol s : w) {
    if (s >= t.alphabet().size()) throw Error("unknown symbol in input");
    x.push_back(t.embedding()[s]);
  }
  for (const auto& spec : t.positions()) {
    auto pe = make_pe(spec, bindings);
    for (std::size_t i = 1; i <= w.size(); ++i) {
      auto v = pe.rational_at(w.size(), i);
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (spec.paired) {
          x[i - 1][spec.offset + 2 * k] += v[k];
          x[i - 1][spec.offset + 2 * k + 1] -= v[k];
        } else {
          x[i - 1][spec.offset + k] += v[k];
        }
      }
    }
  }
  return x;
}

Vector apply_ffn(const FeedForward& f, const Vector& x) {
  Vector h = f.w1.apply(x);
  for (std::size_t k = 0; k < h.size(); ++k) h[k] = relu(h[k] + f.b1[k]);
  Vector y = f.w2.apply(h);
  for (std::size_t k = 0; k < y.size(); ++k) y[k] += f.b2[k];
  return y;
}

Vector apply_layernorm(const LayerNorm& norm, const Vector& x) {
  if (x.empty()) return x;
  Rational d(static_cast<long>(x.size()));
  Rational mean;
  for (const auto& v : x) mean += v;
  mean /= d;
  Rational var;
  for (const auto& v : x) var += (v - mean) * (v - mean);
  var /= d;
  if (var.is_zero()) throw Error("layernorm input has zero variance");
  auto sd = var.exact_sqrt();
  if (!sd) throw Error("layernorm variance " + var.str() + " has no exact square root");
  Vector y(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) y[k] = norm.gamma[k] * (x[k] - mean) / *sd + norm.beta[k];
  return y;
}

Vector head_value(const AttentionHead& h, const Vector& x) {
  Vector v = h.value.apply(x);
  if (!h.value_bias.empty()) add_in_place(v, h.value_bias);
  return v;
}

ActivationTrace run_transformer(const Transformer& t, const Word& w, const predicates::PredicateBindings& bindings) {
  ActivationTrace trace;
  std::size_t n = w.size();
  trace.layers.push_back(embed(t, w, bindings));
  for (const Layer& layer : t.layers()) {
    const auto& x = trace.layers.back();
    std::vector<Vector> c = x;
    std::vector<std::vector<std::optional<std::size_t>>> chosen;
    for (const AttentionHead& h : layer.heads) {
      std::vector<std::optional<std::size_t>> picks(n);
      auto cols = h.score.col_support();
      for (std::size_t i = 1; i <= n; ++i) {
        // u = score^T x_i, restricted to the columns that matter.
        std::vector<Rational> u(cols.size());
        for (const auto& e : h.score.entries())
          if (!x[i - 1][e.row].is_zero()) {
            auto pos = std::lower_bound(cols.begin(), cols.end(), e.col) - cols.begin();
            u[pos] += x[i - 1][e.row] * e.value;
          }
        std::optional<Rational> best;
        std::optional<std::size_t> pick;
        for (std::size_t j = 1; j <= n; ++j) {
          if (!mask_allows(h.mask, i, j)) continue;
          Rational s;
          for (std::size_t k = 0; k < cols.size(); ++k)
            if (!u[k].is_zero()) s += u[k] * x[j - 1][cols[k]];
          bool take = !best || s > *best || (s == *best && h.tiebreak == Direction::Rightmost);
          if (take) {
            best = s;
            pick = j;
          }
        }
        picks[i - 1] = pick;
        if (pick) add_in_place(c[i - 1], head_value(h, x[*pick - 1]));
      }
      chosen.push_back(std::move(picks));
    }
    trace.pre_attention_norm.emplace_back();
    if (layer.attention_norm) {
      trace.pre_attention_norm.back() = c;
      for (auto& v : c) v = apply_layernorm(*layer.attention_norm, v);
    }
    std::vector<Vector> y = c;
    for (std::size_t i = 0; i < n; ++i) add_in_place(y[i], apply_ffn(layer.ffn, c[i]));
    trace.pre_ffn_norm.emplace_back();
    if (layer.ffn_norm) {
      trace.pre_ffn_norm.back() = y;
      for (auto& v : y) v = apply_layernorm(*layer.ffn_norm, v);
    }
    trace.attended.push_back(std::move(chosen));
    trace.mid.push_back(std::move(c));
    trace.layers.push_back(std::move(y));
  }
  if (t.output()) {
    Rational o = t.output()->bias;
    const auto& last = trace.layers.back()[n - 1];
    for (std::size_t k = 0; k < last.size(); ++k) o += t.output()->weights[k] * last[k];
    trace.output = o;
  }
  return trace;
}

bool accepts_transformer(const Transformer& t, const Word& w, const predicates::PredicateBindings& bindings) {
  if (!t.output()) throw Error("transformer has no output layer");
  return run_transformer(t, w, bindings).output->sign() >= 0;
}

}  // namespace hardattn::transformer
