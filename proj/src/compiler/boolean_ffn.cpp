#include "hardattn/compiler/boolean_ffn.hpp"

namespace hardattn::compiler {

using brasp::Atom;
using brasp::BoolExpr;
using transformer::FeedForward;
using transformer::Matrix;

bool BooleanFunction::operator()(const std::vector<bool>& values) const {
  std::size_t m = 0;
  for (std::size_t k = 0; k < inputs.size(); ++k)
    if (values.at(inputs[k])) m |= std::size_t{1} << k;
  return table[m];
}

void FfnBuilder::add_unit(std::vector<std::pair<std::size_t, Rational>> weights, Rational bias,
                          std::size_t target, Rational out) {
  if (target >= width_) throw Error("FFN target coordinate out of range");
  for (const auto& [c, w] : weights)
    if (c >= width_) throw Error("FFN input coordinate out of range");
  units_.push_back(Unit{std::move(weights), std::move(bias), target, std::move(out)});
}

void FfnBuilder::add_boolean(std::size_t target, const BooleanFunction& f) {
  std::size_t ones = static_cast<std::size_t>(std::count(f.table.begin(), f.table.end(), true));
  bool complement = 2 * ones > f.table.size();
  if (complement) add_output_bias(target, Rational(1));
  for (std::size_t m = 0; m < f.table.size(); ++m) {
    if (f.table[m] == complement) continue;
    std::vector<std::pair<std::size_t, Rational>> w;
    long positives = 0;
    for (std::size_t k = 0; k < f.inputs.size(); ++k) {
      bool bit = ((m >> k) & 1) != 0;
      w.emplace_back(f.inputs[k], Rational(bit ? 1 : -1));
      positives += bit ? 1 : 0;
    }
    add_unit(std::move(w), Rational(1 - positives), target, Rational(complement ? -1 : 1));
  }
}

FeedForward FfnBuilder::build() const {
  FeedForward f;
  f.w1 = Matrix(units_.size(), width_);
  f.b1 = transformer::zeros(units_.size());
  f.w2 = Matrix(width_, units_.size());
  f.b2 = b2_;
  for (std::size_t h = 0; h < units_.size(); ++h) {
    for (const auto& [c, w] : units_[h].weights) f.w1.add(h, c, w);
    f.b1[h] = units_[h].bias;
    f.w2.add(units_[h].target, h, units_[h].out);
  }
  return f;
}

transformer::FeedForward empty_ffn(std::size_t width) { return FfnBuilder(width).build(); }

BoolExpr full_dnf(const std::vector<Atom>& atoms, const std::vector<bool>& table) {
  std::vector<BoolExpr> terms;
  for (std::size_t m = 0; m < table.size(); ++m) {
    if (!table[m]) continue;
    std::vector<BoolExpr> lits;
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      BoolExpr a = BoolExpr::atom(atoms[k]);
      lits.push_back(((m >> k) & 1) != 0 ? a : !a);
    }
    terms.push_back(BoolExpr::all(std::move(lits)));
  }
  return BoolExpr::any(std::move(terms));
}

ScoreDecomposition decompose_score(const BoolExpr& score) {
  ScoreDecomposition d;
  std::vector<Atom> atoms = brasp::atoms_of(score);
  if (atoms.size() > kMaxBooleanInputs) throw Error("score has more than 16 atoms");
  for (const auto& a : atoms) (a.var == brasp::Var::I ? d.i_atoms : d.j_atoms).push_back(a);
  std::size_t ni = d.i_atoms.size();
  std::size_t nj = d.j_atoms.size();
  for (std::size_t mi = 0; mi < (std::size_t{1} << ni); ++mi) {
    std::vector<bool> table(std::size_t{1} << nj);
    bool any = false;
    for (std::size_t mj = 0; mj < table.size(); ++mj) {
      table[mj] = score.evaluate([&](const Atom& a) {
        if (a.var == brasp::Var::I) {
          auto k = std::lower_bound(d.i_atoms.begin(), d.i_atoms.end(), a) - d.i_atoms.begin();
          return ((mi >> k) & 1) != 0;
        }
        auto k = std::lower_bound(d.j_atoms.begin(), d.j_atoms.end(), a) - d.j_atoms.begin();
        return ((mj >> k) & 1) != 0;
      });
      any = any || table[mj];
    }
    if (!any) continue;
    std::vector<bool> alpha(std::size_t{1} << ni, false);
    alpha[mi] = true;
    d.alphas.push_back(full_dnf(d.i_atoms, alpha));
    d.betas.push_back(full_dnf(d.j_atoms, table));
  }
  return d;
}

BoolExpr ScoreDecomposition::recombine() const {
  std::vector<BoolExpr> terms;
  for (std::size_t l = 0; l < alphas.size(); ++l) terms.push_back(alphas[l] && betas[l]);
  return BoolExpr::any(std::move(terms));
}

}  // namespace hardattn::compiler
