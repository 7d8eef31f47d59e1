#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "hardattn/brasp/expr.hpp"
#include "hardattn/core/error.hpp"
#include "hardattn/transformer/model.hpp"

namespace hardattn::compiler {

/// Largest number of inputs a truth table may have.
inline constexpr std::size_t kMaxBooleanInputs = 16;

/// Boolean function of some activation coordinates, as a truth table:
/// table[m] is the value when input k equals bit k of m.
struct BooleanFunction {
  std::vector<std::size_t> inputs;
  std::vector<bool> table;

  bool operator()(const std::vector<bool>& values) const;
};

/// Truth table of an expression whose atoms are mapped to coordinates by
/// coord_of; the inputs are the distinct coordinates, ascending.
template <class CoordOf>
BooleanFunction tabulate(const brasp::BoolExpr& e, CoordOf coord_of);

/// Accumulates ReLU hidden units, then builds an FFN.
class FfnBuilder {
 public:
  explicit FfnBuilder(std::size_t width) : width_(width), b2_(transformer::zeros(width)) {}

  /// relu(sum w_k x_k + bias), added with weight out to coordinate target.
  void add_unit(std::vector<std::pair<std::size_t, Rational>> weights, Rational bias,
                std::size_t target, Rational out);
  void add_output_bias(std::size_t target, const Rational& v) { b2_[target] += v; }

  /// Hidden units computing f in full DNF, one ReLU per true minterm
  /// (relu(sum of literals - (m-1))), summed into coordinate target. When
  /// most minterms are true, computes 1 minus the DNF of the false ones.
  void add_boolean(std::size_t target, const BooleanFunction& f);

  std::size_t hidden() const { return units_.size(); }
  transformer::FeedForward build() const;

 private:
  struct Unit {
    std::vector<std::pair<std::size_t, Rational>> weights;
    Rational bias;
    std::size_t target;
    Rational out;
  };
  std::size_t width_;
  std::vector<Unit> units_;
  transformer::Vector b2_;
};

/// S(i,j) = OR_l alpha_l(i) AND beta_l(j). alpha_l is a full minterm over the
/// i-atoms, so at most one term holds for any assignment; beta_l is the full
/// DNF over the j-atoms of S with the i-atoms fixed by alpha_l.
struct ScoreDecomposition {
  std::vector<brasp::Atom> i_atoms;
  std::vector<brasp::Atom> j_atoms;
  std::vector<brasp::BoolExpr> alphas;
  std::vector<brasp::BoolExpr> betas;

  brasp::BoolExpr recombine() const;
};

/// Throws when S has more than kMaxBooleanInputs atoms.
ScoreDecomposition decompose_score(const brasp::BoolExpr& score);

/// Full DNF of a truth table over the given atoms.
brasp::BoolExpr full_dnf(const std::vector<brasp::Atom>& atoms, const std::vector<bool>& table);

// Implementation of the template.

template <class CoordOf>
BooleanFunction tabulate(const brasp::BoolExpr& e, CoordOf coord_of) {
  BooleanFunction f;
  std::vector<brasp::Atom> atoms = brasp::atoms_of(e);
  std::vector<std::size_t> atom_coord;
  for (const auto& a : atoms) {
    std::size_t c = coord_of(a);
    atom_coord.push_back(c);
    bool seen = false;
    for (std::size_t x : f.inputs) seen = seen || x == c;
    if (!seen) f.inputs.push_back(c);
  }
  std::sort(f.inputs.begin(), f.inputs.end());
  if (f.inputs.size() > kMaxBooleanInputs) throw Error("Boolean function has more than 16 inputs");
  std::vector<std::size_t> slot(atoms.size());
  for (std::size_t k = 0; k < atoms.size(); ++k)
    slot[k] = static_cast<std::size_t>(std::lower_bound(f.inputs.begin(), f.inputs.end(), atom_coord[k]) -
                                       f.inputs.begin());
  f.table.resize(std::size_t{1} << f.inputs.size());
  for (std::size_t m = 0; m < f.table.size(); ++m)
    f.table[m] = e.evaluate([&](const brasp::Atom& a) {
      auto it = std::lower_bound(atoms.begin(), atoms.end(), a);
      return ((m >> slot[static_cast<std::size_t>(it - atoms.begin())]) & 1) == 1;
    });
  return f;
}

}  // namespace hardattn::compiler
