#include "hardattn/brasp/normal_form.hpp"

#include <algorithm>

namespace hardattn::brasp {

namespace {

/// Copies a program op by op, letting a callback expand each attention op.
template <class Expand>
Program rewrite(const Program& prog, const Expand& expand) {
  ProgramBuilder b(prog.alphabet());
  b.set_predicates(prog.predicate_families());
  for (const auto& op : prog.ops()) b.reserve(op.name);
  std::vector<std::size_t> remap(prog.num_vectors());
  for (std::size_t s = 0; s < prog.alphabet().size(); ++s) remap[s] = s;
  auto rename = [&](const BoolExpr& e) {
    return substitute(e, [&](const Atom& a) {
      if (a.kind == Atom::Kind::Predicate) return BoolExpr::atom(a);
      return BoolExpr::vec(remap[a.index], a.var);
    });
  };
  std::size_t t = prog.alphabet().size();
  for (const auto& op : prog.ops()) {
    if (!op.is_attention()) {
      remap[t] = b.positionwise(op.name, rename(op.positionwise().expr));
    } else {
      const Attention& src = op.attention();
      Attention att{src.direction, src.mask, rename(src.score), rename(src.value), rename(src.fallback)};
      remap[t] = expand(b, op.name, att);
    }
    ++t;
  }
  if (prog.is_acceptor()) return std::move(b).accept(remap[prog.output_vector()]);
  auto map = std::get<TransduceOutput>(prog.output()).map;
  for (auto& entry : map) entry.second = remap[entry.second];
  return std::move(b).transduce(std::move(map));
}

/// Replaces maximal subterms without i-atoms (but with j-atoms) by fresh
/// attention vectors read at i.
BoolExpr lift_j_terms(ProgramBuilder& b, const std::string& base, const Attention& att, const BoolExpr& e) {
  if (!uses_var(e, Var::I)) {
    if (!uses_var(e, Var::J)) return e;
    std::size_t c = b.attention(b.fresh(base + "_val"), att.direction, att.mask, att.score, e,
                                BoolExpr::constant(false));
    return BoolExpr::vec(c, Var::I);
  }
  switch (e.kind()) {
    case BoolExpr::Kind::Not: return BoolExpr::negate(lift_j_terms(b, base, att, e.children()[0]));
    case BoolExpr::Kind::And:
    case BoolExpr::Kind::Or: {
      std::vector<BoolExpr> parts;
      for (const auto& c : e.children()) parts.push_back(lift_j_terms(b, base, att, c));
      return e.kind() == BoolExpr::Kind::And ? BoolExpr::all(std::move(parts)) : BoolExpr::any(std::move(parts));
    }
    default: return e;
  }
}

}  // namespace

Program normalize_unary_value(const Program& prog) {
  return rewrite(prog, [](ProgramBuilder& b, const std::string& name, const Attention& att) {
    if (!uses_var(att.value, Var::I))
      return b.attention(name, att.direction, att.mask, att.score, att.value, att.fallback);
    std::size_t a = b.attention(b.fresh(name + "_exists"), att.direction, att.mask, att.score,
                                BoolExpr::constant(true), BoolExpr::constant(false));
    BoolExpr rebuilt = lift_j_terms(b, name, att, att.value);
    BoolExpr flag = BoolExpr::vec(a, Var::I);
    return b.positionwise(name, (flag && rebuilt) || (!flag && att.fallback));
  });
}

Program normalize_unary_score(const Program& prog) {
  return rewrite(prog, [](ProgramBuilder& b, const std::string& name, const Attention& att) {
    std::vector<Atom> i_atoms;
    for (const Atom& a : atoms_of(att.score))
      if (a.var == Var::I) i_atoms.push_back(a);
    if (i_atoms.empty()) return b.attention(name, att.direction, att.mask, att.score, att.value, att.fallback);
    if (i_atoms.size() > 16) throw Error("score of " + name + " has too many i-atoms to normalize");
    std::vector<BoolExpr> cases;
    for (std::uint64_t chi = 0; chi < (std::uint64_t{1} << i_atoms.size()); ++chi) {
      BoolExpr specialized = simplify(substitute(att.score, [&](const Atom& a) {
        if (a.var == Var::J) return BoolExpr::atom(a);
        auto k = std::find(i_atoms.begin(), i_atoms.end(), a) - i_atoms.begin();
        return BoolExpr::constant(((chi >> k) & 1) == 1);
      }));
      std::string bits;
      for (std::size_t k = 0; k < i_atoms.size(); ++k) bits += ((chi >> k) & 1) ? '1' : '0';
      std::size_t p = b.attention(b.fresh(name + "_chi" + bits), att.direction, att.mask, specialized,
                                  att.value, att.fallback);
      std::vector<BoolExpr> conj{BoolExpr::vec(p, Var::I)};
      for (std::size_t k = 0; k < i_atoms.size(); ++k) {
        BoolExpr lit = BoolExpr::atom(i_atoms[k]);
        conj.push_back(((chi >> k) & 1) ? lit : !lit);
      }
      cases.push_back(BoolExpr::all(std::move(conj)));
    }
    return b.positionwise(name, BoolExpr::any(std::move(cases)));
  });
}

}  // namespace hardattn::brasp
