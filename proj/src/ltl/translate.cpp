#include "hardattn/ltl/translate.hpp"

#include <functional>
#include <unordered_map>

#include "hardattn/brasp/normal_form.hpp"

namespace hardattn::ltl {

using brasp::Atom;
using brasp::BoolExpr;
using brasp::Var;

brasp::Program ltl_to_brasp(const Formula& f, const Alphabet& alphabet, ToBraspOptions options) {
  if (options.until_free && contains_until(f)) throw Error("formula contains until but until-free mode is set");
  for (const auto& s : symbols_of(f))
    if (!alphabet.find(s)) throw Error("atom Q" + s + " is not in the alphabet");

  brasp::ProgramBuilder b(alphabet);
  StructuralIds ids;
  std::unordered_map<std::size_t, std::size_t> vector_of;
  std::size_t counter = 0;
  auto fresh = [&]() { return b.fresh("F" + std::to_string(++counter)); };

  std::function<std::size_t(const Formula&)> go = [&](const Formula& g) -> std::size_t {
    std::size_t key = ids.id(g);
    auto it = vector_of.find(key);
    if (it != vector_of.end()) return it->second;
    std::size_t v = 0;
    auto at = [](std::size_t t, Var var) { return BoolExpr::vec(t, var); };
    switch (g.kind()) {
      case Formula::Kind::Const:
        v = b.positionwise(b.fresh(g.value() ? "P_true" : "P_false"), BoolExpr::constant(g.value()));
        break;
      case Formula::Kind::Symbol:
        v = b.positionwise(b.fresh("P_" + g.name()), at(b.q(g.name()), Var::I));
        break;
      case Formula::Kind::Predicate:
        v = b.positionwise(fresh(), BoolExpr::pred(b.predicate(g.name()), Var::I));
        break;
      case Formula::Kind::Not: {
        std::size_t c = go(g.children()[0]);
        v = b.positionwise(fresh(), !at(c, Var::I));
        break;
      }
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        std::vector<BoolExpr> parts;
        for (const auto& c : g.children()) parts.push_back(at(go(c), Var::I));
        v = b.positionwise(fresh(), g.kind() == Formula::Kind::And ? BoolExpr::all(std::move(parts))
                                                                   : BoolExpr::any(std::move(parts)));
        break;
      }
      case Formula::Kind::Since:
      case Formula::Kind::Until: {
        std::size_t lhs = go(g.lhs());
        std::size_t rhs = go(g.rhs());
        bool since = g.kind() == Formula::Kind::Since;
        MaskKind mask = since ? (g.strict() ? MaskKind::FutureStrict : MaskKind::FutureNonStrict)
                              : (g.strict() ? MaskKind::PastStrict : MaskKind::PastNonStrict);
        v = b.attention(fresh(), since ? Direction::Rightmost : Direction::Leftmost, mask,
                        !at(lhs, Var::J) || at(rhs, Var::J), at(rhs, Var::J), BoolExpr::constant(false));
        break;
      }
    }
    vector_of.emplace(key, v);
    return v;
  };
  std::size_t root = go(f);
  return std::move(b).accept(root);
}

namespace {

Formula exists_before(const Formula& f) { return Formula::since(Formula::constant(true), f); }
Formula exists_after(const Formula& f) { return Formula::until(Formula::constant(true), f); }
Formula exists_at_or_before(const Formula& f) { return Formula::since(Formula::constant(true), f, false); }
Formula exists_at_or_after(const Formula& f) { return Formula::until(Formula::constant(true), f, false); }
Formula exists_anywhere(const Formula& f) { return exists_before(f) || f || exists_after(f); }
Formula rightmost_of(const Formula& f) { return f && !exists_after(f); }
Formula leftmost_of(const Formula& f) { return f && !exists_before(f); }

Formula attention_formula(const brasp::Attention& att, const Formula& s, const Formula& v, const Formula& d) {
  bool right = att.direction == Direction::Rightmost;
  switch (att.mask) {
    case MaskKind::FutureStrict:
      if (right) return Formula::since(!s, s && v) || (!exists_before(s) && d);
      return exists_before(leftmost_of(s) && v) || (!exists_before(s) && d);
    case MaskKind::FutureNonStrict:
      if (right) return Formula::since(!s, s && v, false) || (!exists_at_or_before(s) && d);
      return exists_at_or_before(leftmost_of(s) && v) || (!exists_at_or_before(s) && d);
    case MaskKind::PastStrict:
      if (right) return exists_after(rightmost_of(s) && v) || (!exists_after(s) && d);
      return Formula::until(!s, s && v) || (!exists_after(s) && d);
    case MaskKind::PastNonStrict:
      if (right) return exists_at_or_after(rightmost_of(s) && v) || (!exists_at_or_after(s) && d);
      return Formula::until(!s, s && v, false) || (!exists_at_or_after(s) && d);
    case MaskKind::None:
      return exists_anywhere((right ? rightmost_of(s) : leftmost_of(s)) && v) || (!exists_anywhere(s) && d);
  }
  throw Error("unknown mask");
}

}  // namespace

std::vector<Formula> vector_formulas(const brasp::Program& prog) {
  std::vector<Formula> fs;
  for (const auto& s : prog.alphabet().symbols()) fs.push_back(Formula::symbol(s));
  std::function<Formula(const BoolExpr&)> convert = [&](const BoolExpr& e) -> Formula {
    switch (e.kind()) {
      case BoolExpr::Kind::Const: return Formula::constant(e.value());
      case BoolExpr::Kind::Atom: {
        const Atom& a = e.atom();
        if (a.kind == Atom::Kind::Predicate) return Formula::predicate(prog.predicate_families().at(a.index));
        return fs.at(a.index);
      }
      case BoolExpr::Kind::Not: return Formula::negate(convert(e.children()[0]));
      case BoolExpr::Kind::And:
      case BoolExpr::Kind::Or: {
        std::vector<Formula> parts;
        for (const auto& c : e.children()) parts.push_back(convert(c));
        return e.kind() == BoolExpr::Kind::And ? Formula::all(std::move(parts)) : Formula::any(std::move(parts));
      }
    }
    throw Error("unknown expression");
  };
  for (const auto& op : prog.ops()) {
    if (!op.is_attention()) {
      fs.push_back(convert(op.positionwise().expr));
      continue;
    }
    const brasp::Attention& att = op.attention();
    if (brasp::uses_var(att.score, Var::I) || brasp::uses_var(att.value, Var::I))
      throw Error("operation " + op.name + " is not in unary normal form");
    fs.push_back(attention_formula(att, convert(att.score), convert(att.value), convert(att.fallback)));
  }
  return fs;
}

Formula brasp_to_ltl(const brasp::Program& prog) {
  if (!prog.is_acceptor()) throw Error("brasp_to_ltl needs an acceptor program, not a transducer");
  brasp::Program normalized = brasp::normalize_unary_value(brasp::normalize_unary_score(prog));
  return vector_formulas(normalized).at(normalized.output_vector());
}

}  // namespace hardattn::ltl
