#include "hardattn/compiler/decompile.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <string>
#include <utility>

#include "hardattn/core/error.hpp"
#include "hardattn/predicates/position_embedding.hpp"
#include "hardattn/transformer/runtime.hpp"

namespace hardattn::compiler {

using brasp::Atom;
using brasp::BoolExpr;
using brasp::ProgramBuilder;
using brasp::Var;
using transformer::AttentionHead;
using transformer::Layer;
using transformer::PositionSpec;
using transformer::Transformer;
using transformer::Vector;

namespace {

using Bits = std::vector<std::vector<CodeBit>>;  // [coordinate][bit]

/// A possible value together with the condition under which it occurs.
struct Case {
  Rational value;
  BoolExpr when;
};

bool is_const(const BoolExpr& e) { return e.kind() == BoolExpr::Kind::Const; }

BoolExpr iff(const BoolExpr& a, const BoolExpr& b) { return (a && b) || (!a && !b); }

class Decompiler {
 public:
  Decompiler(const Transformer& t, DecompileVariant variant, const predicates::PredicateBindings& bindings)
      : t_(t), variant_(variant), vs_(enumerate_value_set(t)), b_(t.alphabet()), bindings_(bindings) {}

  Decompiled run() {
    for (const Layer& layer : t_.layers())
      if (layer.attention_norm || layer.ffn_norm) throw Error("decompile does not support layernorm");
    Bits x = embedding_bits();
    for (std::size_t l = 1; l <= t_.depth(); ++l) x = layer_bits(l, x);
    BoolExpr out = BoolExpr::constant(false);
    if (t_.output()) out = output_expr(x);
    std::size_t y = b_.positionwise(b_.fresh("Y"), brasp::simplify(out));
    brasp::Program prog = std::move(b_).accept(y);
    return Decompiled{std::move(prog), bindings_, vs_, std::move(x)};
  }

 private:
  // Literals and definitions.

  BoolExpr lit(const CodeBit& bit, bool want, Var v) const {
    if (bit.constant) return BoolExpr::constant(*bit.constant == want);
    BoolExpr a = BoolExpr::vec(bit.vector, v);
    return want ? a : !a;
  }

  BoolExpr is_value(const std::vector<CodeBit>& bits, const Rational& value, Var v) const {
    std::vector<BoolExpr> parts;
    for (std::size_t b = 0; b < bits.size(); ++b) parts.push_back(lit(bits[b], vs_.bit(value, b), v));
    return BoolExpr::all(std::move(parts));
  }

  BoolExpr is_proj(const Bits& bits, const std::vector<std::size_t>& coords, const Vector& p, Var v) const {
    std::vector<BoolExpr> parts;
    for (std::size_t k = 0; k < coords.size(); ++k) parts.push_back(is_value(bits[coords[k]], p[k], v));
    return BoolExpr::all(std::move(parts));
  }

  CodeBit define(const std::string& name, const BoolExpr& expr) {
    BoolExpr e = brasp::simplify(expr);
    if (is_const(e)) return CodeBit{e.value(), 0};
    if (e.kind() == BoolExpr::Kind::Atom && e.atom().kind == Atom::Kind::Vector && e.atom().var == Var::I)
      return CodeBit{std::nullopt, e.atom().index};
    return CodeBit{std::nullopt, b_.positionwise(b_.fresh(name), e)};
  }

  CodeBit attend(const std::string& name, Direction dir, MaskKind mask, const BoolExpr& score, const BoolExpr& value,
                 bool fallback) {
    BoolExpr s = brasp::simplify(score);
    BoolExpr v = brasp::simplify(value);
    if (is_const(s) && !s.value()) return CodeBit{fallback, 0};
    if (is_const(v) && v.value() == fallback) return CodeBit{fallback, 0};
    return CodeBit{std::nullopt,
                   b_.attention(b_.fresh(name), dir, mask, s, v, BoolExpr::constant(fallback))};
  }

  std::vector<CodeBit> bits_of_cases(const std::string& name, const std::vector<Case>& cases) {
    std::vector<CodeBit> out;
    for (std::size_t b = 0; b < vs_.bits; ++b) {
      std::vector<BoolExpr> parts;
      for (const auto& c : cases)
        if (vs_.bit(c.value, b)) parts.push_back(c.when);
      out.push_back(define(name + "_" + std::to_string(b), BoolExpr::any(std::move(parts))));
    }
    return out;
  }

  // Layer 0.

  Bits embedding_bits() {
    std::size_t d = t_.width();
    // cover[c] = (spec index, PE coordinate, sign).
    std::vector<std::optional<std::tuple<std::size_t, std::size_t, int>>> cover(d);
    std::vector<std::optional<predicates::PeBitEncoding>> encodings(t_.positions().size());
    for (std::size_t s = 0; s < t_.positions().size(); ++s) {
      const PositionSpec& spec = t_.positions()[s];
      for (std::size_t k = 0; k < spec.dim(); ++k)
        for (int side = 0; side < (spec.paired ? 2 : 1); ++side) {
          std::size_t c = spec.paired ? spec.offset + 2 * k + side : spec.offset + k;
          if (cover[c]) throw Error("position embeddings overlap at coordinate " + std::to_string(c));
          cover[c] = std::make_tuple(s, k, side == 0 ? 1 : -1);
        }
      if (spec.kind == PositionSpec::Kind::Sinusoidal) {
        auto enc = predicates::bind_pe_as_predicates(predicates::sinusoidal_pe(spec.frequencies),
                                                     "PE" + std::to_string(s));
        for (const auto& f : enc.families) bindings_.bind(f);
        encodings[s] = std::move(enc);
      }
    }

    Bits bits(d);
    for (std::size_t c = 0; c < d; ++c) {
      std::vector<Case> pe_cases{{Rational(0), BoolExpr::constant(true)}};
      if (cover[c]) {
        auto [s, k, sign] = *cover[c];
        const PositionSpec& spec = t_.positions()[s];
        pe_cases.clear();
        if (spec.kind == PositionSpec::Kind::Predicates) {
          BoolExpr p = BoolExpr::pred(b_.predicate(spec.families[k]), Var::I);
          pe_cases.push_back({Rational(0), !p});
          pe_cases.push_back({Rational(sign), p});
        } else {
          const auto& enc = *encodings[s];
          std::set<predicates::PeScalar> seen;
          for (const auto& img : predicates::sinusoidal_pe(spec.frequencies).image()) {
            if (!seen.insert(img[k]).second) continue;
            std::vector<BoolExpr> lits;
            for (std::size_t b = 0; b < enc.bits; ++b) {
              BoolExpr a = BoolExpr::pred(b_.predicate(enc.family_name(k, b)), Var::I);
              lits.push_back(((enc.code(img[k]) >> b) & 1) != 0 ? a : !a);
            }
            pe_cases.push_back({img[k].rational_value() * Rational(sign), BoolExpr::all(std::move(lits))});
          }
        }
      }
      std::vector<Case> cases;
      for (Symbol a = 0; a < t_.alphabet().size(); ++a)
        for (const auto& pc : pe_cases)
          cases.push_back({t_.embedding()[a][c] + pc.value, BoolExpr::vec(a, Var::I) && pc.when});
      bits[c] = bits_of_cases("x0_" + std::to_string(c), cases);
    }
    return bits;
  }

  // Attention.

  struct HeadBits {
    std::map<std::size_t, std::vector<CodeBit>> coords;  // attention output bits
    std::map<std::size_t, std::vector<Rational>> values;  // possible outputs, including 0
  };

  HeadBits head_bits(std::size_t l, std::size_t hi, const AttentionHead& h, const std::vector<Vector>& xs,
                     const Bits& x) {
    std::string tag = std::to_string(l) + "_" + std::to_string(hi);
    HeadBits out;

    // Value outputs by key projection.
    auto vcols = h.value.col_support();
    auto vps = projections(xs, vcols);
    std::vector<Vector> outputs;
    for (const auto& vp : vps) {
      Vector full = transformer::zeros(t_.width());
      for (std::size_t k = 0; k < vcols.size(); ++k) full[vcols[k]] = vp[k];
      outputs.push_back(transformer::head_value(h, full));
    }
    std::set<std::size_t> touched;
    for (std::size_t r : h.value.row_support()) touched.insert(r);
    for (std::size_t c = 0; c < h.value_bias.size(); ++c)
      if (!h.value_bias[c].is_zero()) touched.insert(c);

    // V'_{c,b}(j).
    std::map<std::size_t, std::vector<BoolExpr>> vprime;
    for (std::size_t c : touched) {
      std::set<Rational> vals{Rational(0)};
      for (std::size_t b = 0; b < vs_.bits; ++b) {
        std::vector<BoolExpr> parts;
        for (std::size_t k = 0; k < vps.size(); ++k)
          if (vs_.bit(outputs[k][c], b)) parts.push_back(is_proj(x, vcols, vps[k], Var::J));
        vprime[c].push_back(BoolExpr::any(std::move(parts)));
      }
      for (const auto& o : outputs) vals.insert(o[c]);
      out.values[c] = {vals.begin(), vals.end()};
    }

    // Scores by (query projection, key projection).
    auto rows = h.score.row_support();
    auto cols = h.score.col_support();
    auto qs = projections(xs, rows);
    auto ks = projections(xs, cols);
    std::vector<std::vector<Rational>> score(qs.size(), std::vector<Rational>(ks.size()));
    std::set<Rational> distinct;
    for (std::size_t qi = 0; qi < qs.size(); ++qi)
      for (std::size_t ki = 0; ki < ks.size(); ++ki) {
        Rational s;
        for (const auto& e : h.score.entries()) {
          auto r = std::lower_bound(rows.begin(), rows.end(), e.row) - rows.begin();
          auto c = std::lower_bound(cols.begin(), cols.end(), e.col) - cols.begin();
          s += qs[qi][r] * e.value * ks[ki][c];
        }
        score[qi][ki] = s;
        distinct.insert(s);
      }
    std::vector<BoolExpr> q_is, k_is;
    for (const auto& q : qs) q_is.push_back(is_proj(x, rows, q, Var::I));
    for (const auto& k : ks) k_is.push_back(is_proj(x, cols, k, Var::J));
    // OR over pairs whose score satisfies pred.
    auto pairs_where = [&](auto pred) {
      std::vector<BoolExpr> terms;
      for (std::size_t qi = 0; qi < qs.size(); ++qi) {
        std::vector<BoolExpr> keys;
        for (std::size_t ki = 0; ki < ks.size(); ++ki)
          if (pred(score[qi][ki])) keys.push_back(k_is[ki]);
        if (!keys.empty()) terms.push_back(q_is[qi] && BoolExpr::any(std::move(keys)));
      }
      return BoolExpr::any(std::move(terms));
    };

    if (variant_ == DecompileVariant::Shallower) {
      std::vector<Rational> vlist(distinct.begin(), distinct.end());
      CodeBit any = attend("any" + tag, Direction::Rightmost, h.mask, BoolExpr::constant(true),
                           BoolExpr::constant(true), false);
      // max_v: no unmasked score exceeds v.
      std::vector<CodeBit> max(vlist.size(), CodeBit{true, 0});
      for (std::size_t v = 0; v + 1 < vlist.size(); ++v)
        max[v] = attend("max" + tag + "_" + std::to_string(v), Direction::Rightmost, h.mask,
                        pairs_where([&](const Rational& s) { return s > vlist[v]; }), BoolExpr::constant(false),
                        true);
      std::vector<BoolExpr> s_eq;
      for (const auto& v : vlist) s_eq.push_back(pairs_where([&](const Rational& s) { return s == v; }));
      for (std::size_t c : touched) {
        for (std::size_t b = 0; b < vs_.bits; ++b) {
          std::vector<BoolExpr> alts;
          for (std::size_t v = 0; v < vlist.size(); ++v) {
            BoolExpr is_max = lit(max[v], true, Var::I);
            if (v > 0) is_max = is_max && lit(max[v - 1], false, Var::I);
            CodeBit r = attend("r" + tag + "_" + std::to_string(v) + "_" + std::to_string(c) + "_" + std::to_string(b),
                               h.tiebreak, h.mask, s_eq[v], vprime[c][b], false);
            alts.push_back(is_max && lit(r, true, Var::I));
          }
          BoolExpr a = lit(any, true, Var::I);
          BoolExpr e = (a && BoolExpr::any(std::move(alts))) ||
                       (!a && BoolExpr::constant(vs_.bit(Rational(0), b)));
          out.coords[c].push_back(define("att" + tag + "_" + std::to_string(c) + "_" + std::to_string(b), e));
        }
      }
      return out;
    }

    // Smaller: determine the bits of the maximum score from the top down.
    std::vector<std::size_t> free_bits;
    for (std::size_t b = vs_.bits; b-- > 0;) {
      bool seen0 = false, seen1 = false;
      for (const auto& s : distinct) (vs_.bit(s, b) ? seen1 : seen0) = true;
      if (seen0 && seen1) free_bits.push_back(b);
    }
    BoolExpr cand = BoolExpr::constant(true);
    for (std::size_t b : free_bits) {
      BoolExpr sbit = pairs_where([&](const Rational& s) { return vs_.bit(s, b); });
      CodeBit m = attend("mb" + tag + "_" + std::to_string(b), Direction::Rightmost, h.mask, cand && sbit,
                         BoolExpr::constant(true), false);
      cand = cand && iff(sbit, lit(m, true, Var::I));
    }
    for (std::size_t c : touched)
      for (std::size_t b = 0; b < vs_.bits; ++b)
        out.coords[c].push_back(attend("att" + tag + "_" + std::to_string(c) + "_" + std::to_string(b), h.tiebreak,
                                       h.mask, cand, vprime[c][b], vs_.bit(Rational(0), b)));
    return out;
  }

  // One layer.

  Bits layer_bits(std::size_t l, const Bits& x) {
    const Layer& layer = t_.layers()[l - 1];
    const auto& xs = vs_.activations[l - 1];
    std::size_t d = t_.width();

    std::vector<HeadBits> heads;
    for (std::size_t hi = 0; hi < layer.heads.size(); ++hi) {
      const AttentionHead& h = layer.heads[hi];
      bool zero_bias = std::all_of(h.value_bias.begin(), h.value_bias.end(),
                                   [](const Rational& v) { return v.is_zero(); });
      if (h.value.is_zero() && zero_bias) continue;
      heads.push_back(head_bits(l, hi, h, xs, x));
    }

    // After attention: x_c plus each head's output at c.
    Bits mid(d);
    for (std::size_t c = 0; c < d; ++c) {
      std::vector<Case> cases;
      for (const auto& v : projections(xs, {c})) cases.push_back({v[0], is_value(x[c], v[0], Var::I)});
      bool touched = false;
      for (const auto& hb : heads) {
        auto it = hb.values.find(c);
        if (it == hb.values.end()) continue;
        touched = true;
        std::vector<Case> next;
        for (const auto& cs : cases)
          for (const auto& a : it->second)
            next.push_back({cs.value + a, cs.when && is_value(hb.coords.at(c), a, Var::I)});
        cases = std::move(next);
      }
      mid[c] = touched ? bits_of_cases("m" + std::to_string(l) + "_" + std::to_string(c), cases) : x[c];
    }

    // FFN with residual.
    const auto& f = layer.ffn;
    const auto& mids = vs_.mids[l - 1];
    std::vector<std::vector<std::pair<std::size_t, Rational>>> w1_rows(f.hidden()), w2_rows(d);
    for (const auto& e : f.w1.entries()) w1_rows[e.row].emplace_back(e.col, e.value);
    for (const auto& e : f.w2.entries()) w2_rows[e.row].emplace_back(e.col, e.value);
    Bits y(d);
    for (std::size_t c = 0; c < d; ++c) {
      if (w2_rows[c].empty() && f.b2[c].is_zero()) {
        y[c] = mid[c];
        continue;
      }
      std::set<std::size_t> support{c};
      for (const auto& [h, w] : w2_rows[c])
        for (const auto& [k, v] : w1_rows[h]) support.insert(k);
      std::vector<std::size_t> coords(support.begin(), support.end());
      auto index = [&](std::size_t k) { return std::lower_bound(coords.begin(), coords.end(), k) - coords.begin(); };
      std::vector<Case> cases;
      for (const auto& p : projections(mids, coords)) {
        Rational value = p[index(c)] + f.b2[c];
        for (const auto& [h, w] : w2_rows[c]) {
          Rational pre = f.b1[h];
          for (const auto& [k, v] : w1_rows[h]) pre += v * p[index(k)];
          value += w * relu(pre);
        }
        cases.push_back({value, is_proj(mid, coords, p, Var::I)});
      }
      y[c] = bits_of_cases("x" + std::to_string(l) + "_" + std::to_string(c), cases);
    }
    return y;
  }

  BoolExpr output_expr(const Bits& x) const {
    const auto& o = *t_.output();
    std::vector<std::size_t> coords;
    for (std::size_t c = 0; c < o.weights.size(); ++c)
      if (!o.weights[c].is_zero()) coords.push_back(c);
    std::vector<BoolExpr> parts;
    for (const auto& p : projections(vs_.activations.back(), coords)) {
      Rational s = o.bias;
      for (std::size_t k = 0; k < coords.size(); ++k) s += o.weights[coords[k]] * p[k];
      if (s.sign() >= 0) parts.push_back(is_proj(x, coords, p, Var::I));
    }
    return BoolExpr::any(std::move(parts));
  }

  const Transformer& t_;
  DecompileVariant variant_;
  ValueSet vs_;
  ProgramBuilder b_;
  predicates::PredicateBindings bindings_;
};

}  // namespace

Decompiled decompile(const Transformer& t, DecompileVariant variant, const predicates::PredicateBindings& bindings) {
  return Decompiler(t, variant, bindings).run();
}

DecompileVariant parse_variant(std::string_view text) {
  if (text == "shallower") return DecompileVariant::Shallower;
  if (text == "smaller") return DecompileVariant::Smaller;
  throw Error("unknown decompile variant '" + std::string(text) + "'");
}

}  // namespace hardattn::compiler
