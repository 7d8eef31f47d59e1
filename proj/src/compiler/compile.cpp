#include "hardattn/compiler/compile.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hardattn/brasp/normal_form.hpp"
#include "hardattn/compiler/boolean_ffn.hpp"
#include "hardattn/core/error.hpp"

namespace hardattn::compiler {

using brasp::Atom;
using brasp::Attention;
using brasp::BoolExpr;
using brasp::Program;
using brasp::Var;
using transformer::AttentionHead;
using transformer::Layer;
using transformer::Matrix;
using transformer::PositionSpec;
using transformer::Transformer;
using transformer::Vector;

namespace {

/// Scratch coordinates of one attention operation.
struct Scratch {
  ScoreDecomposition score;
  std::vector<Atom> j_atoms;  // of S and V, sorted
  std::size_t alpha = 0;      // first of score.alphas.size() coordinates
  std::size_t beta = 0;
  std::size_t flag = 0;  // flag, flag + 1
  std::size_t g = 0;
  std::size_t attended = 0;

  std::size_t size() const { return 2 * score.alphas.size() + 2 + 2 * j_atoms.size(); }
  std::size_t slot(const Atom& a) const {
    for (std::size_t k = 0; k < j_atoms.size(); ++k)
      if (j_atoms[k] == a) return k;
    throw Error("internal: j-atom has no scratch slot");
  }
};

Scratch plan_scratch(const Attention& att, std::size_t base) {
  Scratch s;
  s.score = decompose_score(att.score);
  std::vector<Atom> atoms = brasp::atoms_of(att.score);
  for (const Atom& a : brasp::atoms_of(att.value)) atoms.push_back(a);
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  for (const Atom& a : atoms)
    if (a.var == Var::J) s.j_atoms.push_back(a);
  std::size_t m = s.score.alphas.size();
  s.alpha = base;
  s.beta = base + m;
  s.flag = base + 2 * m;
  s.g = s.flag + 2;
  s.attended = s.g + s.j_atoms.size();
  return s;
}

BoolExpr at_i(const BoolExpr& e) {
  return brasp::substitute(e, [](Atom a) {
    a.var = Var::I;
    return BoolExpr::atom(a);
  });
}

/// Rewrites program atoms to coordinate atoms via coord(atom).
template <class Fn>
BoolExpr to_coords(const BoolExpr& e, Fn coord) {
  return brasp::substitute(e, [&](const Atom& a) { return coord(a); });
}

BoolExpr coord_atom(std::size_t c) { return BoolExpr::vec(c, Var::I); }

/// Boolean function of a coordinate-atom expression.
BooleanFunction coord_function(const BoolExpr& e) {
  return tabulate(e, [](const Atom& a) { return a.index; });
}

AttentionHead zero_head(std::size_t width) {
  return AttentionHead{Matrix(width, width), MaskKind::None, Direction::Rightmost, Matrix(width, width), {}};
}

/// Head of an attention operation: bilinear score over the alpha/beta
/// scratch, value moving the flag and copying g into attended.
AttentionHead attention_head(const Attention& att, const Scratch& s, std::size_t width) {
  AttentionHead h = zero_head(width);
  h.mask = att.mask;
  h.tiebreak = att.direction;
  for (std::size_t l = 0; l < s.score.alphas.size(); ++l) h.score.set(s.alpha + l, s.beta + l, Rational(1));
  h.value.set(s.flag, s.flag + 1, Rational(1));
  h.value.set(s.flag + 1, s.flag + 1, Rational(-1));
  for (std::size_t k = 0; k < s.j_atoms.size(); ++k) h.value.set(s.attended + k, s.g + k, Rational(1));
  return h;
}

/// Writes the scratch of an attention op; coord maps program atoms (read at
/// i) to coordinate expressions.
template <class Fn>
void add_scratch(FfnBuilder& ffn, const Scratch& s, Fn coord) {
  for (std::size_t l = 0; l < s.score.alphas.size(); ++l) {
    ffn.add_boolean(s.alpha + l, coord_function(to_coords(s.score.alphas[l], coord)));
    ffn.add_boolean(s.beta + l, coord_function(to_coords(at_i(s.score.betas[l]), coord)));
  }
  ffn.add_output_bias(s.flag + 1, Rational(1));
  for (std::size_t k = 0; k < s.j_atoms.size(); ++k)
    ffn.add_boolean(s.g + k, coord_function(to_coords(at_i(BoolExpr::atom(s.j_atoms[k])), coord)));
}

/// P(i) = flag ? (S(i,j*) and V(i,j*)) or (not S(i,j*) and D(i)) : D(i),
/// with j-atoms read from the attended copies.
template <class Fn>
BoolExpr attention_result(const Attention& att, const Scratch& s, Fn coord) {
  auto read = [&](const Atom& a) {
    if (a.var == Var::J) return coord_atom(s.attended + s.slot(a));
    return coord(a);
  };
  BoolExpr sc = to_coords(att.score, read);
  BoolExpr v = to_coords(att.value, read);
  BoolExpr d = to_coords(att.fallback, read);
  BoolExpr flag = coord_atom(s.flag);
  return (flag && ((sc && v) || (!sc && d))) || (!flag && d);
}

std::vector<std::string> base_names(const Program& prog) {
  std::vector<std::string> names;
  for (std::size_t t = 0; t < prog.num_vectors(); ++t) names.push_back(prog.vector_name(t));
  return names;
}

void scratch_names(std::vector<std::string>& names, const std::string& op, const Scratch& s) {
  std::size_t m = s.score.alphas.size();
  for (std::size_t l = 0; l < m; ++l) names.push_back(op + ".alpha" + std::to_string(l));
  for (std::size_t l = 0; l < m; ++l) names.push_back(op + ".beta" + std::to_string(l));
  names.push_back(op + ".flag0");
  names.push_back(op + ".flag1");
  for (std::size_t k = 0; k < s.j_atoms.size(); ++k) names.push_back(op + ".g" + std::to_string(k));
  for (std::size_t k = 0; k < s.j_atoms.size(); ++k) names.push_back(op + ".attended" + std::to_string(k));
}

std::size_t accept_vector(const Program& prog) {
  if (!prog.is_acceptor()) throw Error("cannot compile a transduction program to a transformer");
  return prog.output_vector();
}

transformer::OutputLayer output_layer(std::size_t width, std::size_t out) {
  transformer::OutputLayer o{transformer::zeros(width), Rational(-1, 2)};
  o.weights[out] = Rational(1);
  return o;
}

/// Expression of a vector over the coordinates available before the FFN of
/// one level: vectors of smaller depth and that level's attention scratch.
struct LevelExprs {
  const Program& prog;
  const std::vector<std::size_t>& depth;
  const std::map<std::size_t, Scratch>& scratch;
  std::size_t level;
  std::map<std::size_t, BoolExpr> memo;

  BoolExpr of(std::size_t t) {
    if (depth[t] < level) return coord_atom(t);
    if (auto it = memo.find(t); it != memo.end()) return it->second;
    const auto& op = *prog.op_of(t);
    auto coord = [&](const Atom& a) {
      if (a.var != Var::I) throw Error("internal: j-atom read at i");
      return of(a.index);
    };
    BoolExpr e = op.is_attention() ? attention_result(op.attention(), scratch.at(t), coord)
                                   : to_coords(op.positionwise().expr, coord);
    e = brasp::simplify(e);
    memo.emplace(t, e);
    return e;
  }
};

}  // namespace

std::size_t naive_layer_count(const Program& prog) {
  std::size_t n = 0;
  for (const auto& op : prog.ops()) n += op.is_attention() ? 2 : 1;
  return n;
}

Transformer compile_naive(const Program& prog) {
  std::size_t out = accept_vector(prog);
  std::size_t nv = prog.num_vectors();
  std::size_t nf = prog.predicate_families().size();
  std::size_t width = nv + nf;
  std::vector<std::string> names = base_names(prog);
  for (const auto& f : prog.predicate_families()) names.push_back("PRED:" + f);

  std::map<std::size_t, Scratch> scratch;  // by op index
  for (std::size_t k = 0; k < prog.ops().size(); ++k) {
    const auto& op = prog.ops()[k];
    if (!op.is_attention()) continue;
    Scratch s = plan_scratch(op.attention(), width);
    width += s.size();
    scratch_names(names, op.name, s);
    scratch.emplace(k, std::move(s));
  }

  auto coord = [&](const Atom& a) {
    if (a.var != Var::I) throw Error("internal: j-atom read at i");
    return coord_atom(a.kind == Atom::Kind::Vector ? a.index : nv + a.index);
  };

  std::vector<Vector> embedding;
  for (Symbol a = 0; a < prog.alphabet().size(); ++a) {
    Vector e = transformer::zeros(width);
    e[a] = Rational(1);
    embedding.push_back(std::move(e));
  }
  std::vector<PositionSpec> positions;
  if (nf > 0) {
    PositionSpec p;
    p.kind = PositionSpec::Kind::Predicates;
    p.families = prog.predicate_families();
    p.offset = nv;
    positions.push_back(std::move(p));
  }

  std::vector<Layer> layers;
  for (std::size_t k = 0; k < prog.ops().size(); ++k) {
    const auto& op = prog.ops()[k];
    std::size_t t = prog.alphabet().size() + k;
    if (!op.is_attention()) {
      Layer layer;
      layer.heads.push_back(zero_head(width));
      FfnBuilder ffn(width);
      ffn.add_boolean(t, coord_function(to_coords(op.positionwise().expr, coord)));
      layer.ffn = ffn.build();
      layers.push_back(std::move(layer));
      continue;
    }
    const Scratch& s = scratch.at(k);
    Layer first;
    first.heads.push_back(zero_head(width));
    FfnBuilder ffn1(width);
    add_scratch(ffn1, s, coord);
    first.ffn = ffn1.build();
    layers.push_back(std::move(first));

    Layer second;
    second.heads.push_back(attention_head(op.attention(), s, width));
    FfnBuilder ffn2(width);
    ffn2.add_boolean(t, coord_function(attention_result(op.attention(), s, coord)));
    second.ffn = ffn2.build();
    layers.push_back(std::move(second));
  }
  return Transformer(prog.alphabet(), width, std::move(embedding), std::move(positions), std::move(layers),
                     output_layer(width, out), std::move(names));
}

Transformer compile_depth_preserving(const Program& prog) {
  std::size_t out = accept_vector(prog);
  if (!prog.predicate_families().empty())
    throw Error("depth-preserving compilation does not support position predicates");
  std::size_t nv = prog.num_vectors();
  std::size_t ns = prog.alphabet().size();
  std::vector<std::size_t> depth(nv);
  for (std::size_t t = 0; t < nv; ++t) depth[t] = brasp::vector_depth(prog, t);
  std::size_t levels = brasp::attention_depth(prog);

  std::size_t width = nv;
  std::vector<std::string> names = base_names(prog);
  std::map<std::size_t, Scratch> scratch;  // by vector index
  for (std::size_t t = ns; t < nv; ++t) {
    const auto& op = *prog.op_of(t);
    if (!op.is_attention()) continue;
    Scratch s = plan_scratch(op.attention(), width);
    width += s.size();
    scratch_names(names, op.name, s);
    scratch.emplace(t, std::move(s));
  }

  // Embedding: depth-0 vectors and the scratch of depth-1 attention.
  std::vector<Vector> embedding;
  for (Symbol a = 0; a < ns; ++a) {
    Vector e = transformer::zeros(width);
    std::vector<bool> value(nv, false);
    value[a] = true;
    auto read = [&](const Atom& x) { return value[x.index]; };
    for (std::size_t t = ns; t < nv; ++t)
      if (depth[t] == 0) value[t] = prog.op_of(t)->positionwise().expr.evaluate(read);
    for (std::size_t t = 0; t < nv; ++t)
      if (depth[t] == 0 && value[t]) e[t] = Rational(1);
    for (const auto& [t, s] : scratch) {
      if (depth[t] != 1) continue;
      for (std::size_t l = 0; l < s.score.alphas.size(); ++l) {
        if (s.score.alphas[l].evaluate(read)) e[s.alpha + l] = Rational(1);
        if (at_i(s.score.betas[l]).evaluate(read)) e[s.beta + l] = Rational(1);
      }
      e[s.flag + 1] = Rational(1);
      for (std::size_t k = 0; k < s.j_atoms.size(); ++k)
        if (read(s.j_atoms[k])) e[s.g + k] = Rational(1);
    }
    embedding.push_back(std::move(e));
  }

  std::vector<Layer> layers;
  for (std::size_t level = 1; level <= levels; ++level) {
    Layer layer;
    for (const auto& [t, s] : scratch)
      if (depth[t] == level) layer.heads.push_back(attention_head(prog.op_of(t)->attention(), s, width));
    if (layer.heads.empty()) layer.heads.push_back(zero_head(width));

    LevelExprs here{prog, depth, scratch, level, {}};
    FfnBuilder ffn(width);
    for (std::size_t t = ns; t < nv; ++t)
      if (depth[t] == level) ffn.add_boolean(t, coord_function(here.of(t)));
    auto coord = [&](const Atom& a) {
      if (a.var != Var::I) throw Error("internal: j-atom read at i");
      return here.of(a.index);
    };
    for (const auto& [t, s] : scratch)
      if (depth[t] == level + 1) add_scratch(ffn, s, coord);
    layer.ffn = ffn.build();
    layers.push_back(std::move(layer));
  }
  return Transformer(prog.alphabet(), width, std::move(embedding), {}, std::move(layers), output_layer(width, out),
                     std::move(names));
}

}  // namespace hardattn::compiler
