#include "hardattn/compiler/value_set.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "hardattn/core/error.hpp"
#include "hardattn/predicates/position_embedding.hpp"
#include "hardattn/transformer/runtime.hpp"

namespace hardattn::compiler {

using transformer::AttentionHead;
using transformer::Layer;
using transformer::PositionSpec;
using transformer::Transformer;
using transformer::Vector;

namespace {

using VectorSet = std::set<Vector>;

void check_size(std::size_t n) {
  if (n > kMaxValueSetSize) throw Error("value set too large to enumerate");
}

std::vector<Vector> to_vector(const VectorSet& s) { return {s.begin(), s.end()}; }

Vector add(const Vector& x, const Vector& y) {
  Vector z = x;
  for (std::size_t k = 0; k < z.size(); ++k) z[k] += y[k];
  return z;
}

/// Contributions of one position spec, as full-width vectors.
std::vector<Vector> spec_images(const PositionSpec& spec, std::size_t width) {
  std::vector<std::vector<Rational>> raw;
  if (spec.kind == PositionSpec::Kind::Predicates) {
    std::size_t k = spec.families.size();
    if (k > 20) throw Error("too many predicate families to enumerate");
    for (std::size_t m = 0; m < (std::size_t{1} << k); ++m) {
      std::vector<Rational> v(k);
      for (std::size_t c = 0; c < k; ++c) v[c] = Rational(static_cast<int>((m >> c) & 1));
      raw.push_back(std::move(v));
    }
  } else {
    for (const auto& pv : predicates::sinusoidal_pe(spec.frequencies).image()) {
      std::vector<Rational> v;
      for (const auto& s : pv) {
        if (!s.is_rational()) throw Error("position embedding value " + s.str() + " is irrational");
        v.push_back(s.rational_value());
      }
      raw.push_back(std::move(v));
    }
  }
  std::vector<Vector> out;
  for (const auto& v : raw) {
    Vector x = transformer::zeros(width);
    for (std::size_t c = 0; c < v.size(); ++c) {
      if (spec.paired) {
        x[spec.offset + 2 * c] += v[c];
        x[spec.offset + 2 * c + 1] -= v[c];
      } else {
        x[spec.offset + c] += v[c];
      }
    }
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<Rational> head_scores(const AttentionHead& h, const std::vector<Vector>& xs) {
  auto rows = h.score.row_support();
  auto cols = h.score.col_support();
  auto qs = projections(xs, rows);
  auto ks = projections(xs, cols);
  std::set<Rational> out;
  for (const auto& q : qs)
    for (const auto& k : ks) {
      Rational s;
      for (const auto& e : h.score.entries()) {
        auto r = std::lower_bound(rows.begin(), rows.end(), e.row) - rows.begin();
        auto c = std::lower_bound(cols.begin(), cols.end(), e.col) - cols.begin();
        s += q[r] * e.value * k[c];
      }
      out.insert(s);
    }
  return {out.begin(), out.end()};
}

}  // namespace

std::vector<Vector> projections(const std::vector<Vector>& xs, const std::vector<std::size_t>& coords) {
  VectorSet out;
  for (const auto& x : xs) {
    Vector p;
    p.reserve(coords.size());
    for (std::size_t c : coords) p.push_back(x[c]);
    out.insert(std::move(p));
  }
  return to_vector(out);
}

std::vector<Vector> position_images(const Transformer& t) {
  VectorSet acc{transformer::zeros(t.width())};
  for (const auto& spec : t.positions()) {
    VectorSet next;
    for (const auto& img : spec_images(spec, t.width()))
      for (const auto& x : acc) next.insert(add(x, img));
    check_size(next.size());
    acc = std::move(next);
  }
  return to_vector(acc);
}

std::vector<Vector> initial_activations(const Transformer& t) {
  VectorSet out;
  auto pe = position_images(t);
  for (const auto& e : t.embedding())
    for (const auto& p : pe) out.insert(add(e, p));
  check_size(out.size());
  return to_vector(out);
}

ValueSet enumerate_value_set(const Transformer& t) {
  ValueSet vs;
  std::set<Rational> values{Rational(0)};
  auto record = [&](const std::vector<Vector>& xs) {
    for (const auto& x : xs) values.insert(x.begin(), x.end());
  };
  vs.activations.push_back(initial_activations(t));
  record(vs.activations.back());

  for (const Layer& layer : t.layers()) {
    const auto& xs = vs.activations.back();
    VectorSet mid(xs.begin(), xs.end());
    std::vector<std::vector<Rational>> scores;
    for (const AttentionHead& h : layer.heads) {
      scores.push_back(head_scores(h, xs));
      values.insert(scores.back().begin(), scores.back().end());
      VectorSet outputs{transformer::zeros(t.width())};
      for (const auto& x : xs) outputs.insert(transformer::head_value(h, x));
      record(to_vector(outputs));
      if (outputs.size() == 1) continue;
      check_size(mid.size() * outputs.size());
      VectorSet next;
      for (const auto& m : mid)
        for (const auto& o : outputs) next.insert(add(m, o));
      mid = std::move(next);
    }
    // Combinations the layernorm rejects cannot occur in a successful run.
    VectorSet normed;
    for (const auto& m : mid) {
      if (!layer.attention_norm) {
        normed.insert(m);
        continue;
      }
      try {
        normed.insert(transformer::apply_layernorm(*layer.attention_norm, m));
      } catch (const Error&) {
      }
    }
    VectorSet out;
    for (const auto& m : normed) {
      Vector y = add(m, transformer::apply_ffn(layer.ffn, m));
      if (!layer.ffn_norm) {
        out.insert(std::move(y));
        continue;
      }
      try {
        out.insert(transformer::apply_layernorm(*layer.ffn_norm, y));
      } catch (const Error&) {
      }
    }
    vs.mids.push_back(to_vector(normed));
    vs.scores.push_back(std::move(scores));
    vs.activations.push_back(to_vector(out));
    record(vs.mids.back());
    record(vs.activations.back());
  }
  vs.values.assign(values.begin(), values.end());
  while ((std::size_t{1} << vs.bits) < vs.values.size()) ++vs.bits;
  return vs;
}

std::size_t ValueSet::code(const Rational& v) const {
  auto it = std::lower_bound(values.begin(), values.end(), v);
  if (it == values.end() || *it != v) throw Error("value " + v.str() + " is not in the value set");
  return static_cast<std::size_t>(it - values.begin());
}

bool ValueSet::contains(std::size_t layer, const Vector& x) const {
  const auto& xs = activations.at(layer);
  return std::binary_search(xs.begin(), xs.end(), x);
}

std::size_t finite_image_bound(std::size_t alphabet_size, std::size_t layer) {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  std::size_t v = alphabet_size + 1;  // (|S|+1)^(2^l) by repeated squaring
  for (std::size_t l = 0; l < layer; ++l) {
    if (v > 0 && v > kMax / v) return kMax;
    v *= v;
  }
  return v - 1;
}

std::vector<std::size_t> multihead_image_bounds(const Transformer& t) {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  auto mul = [](std::size_t a, std::size_t b) { return a != 0 && b > kMax / a ? kMax : a * b; };
  std::vector<std::size_t> out{t.alphabet().size()};
  for (const Layer& layer : t.layers()) {
    std::size_t f = out.back();
    std::size_t next = f;
    for (std::size_t h = 0; h < layer.heads.size(); ++h) next = mul(next, f == kMax ? kMax : f + 1);
    out.push_back(next);
  }
  return out;
}

}  // namespace hardattn::compiler
