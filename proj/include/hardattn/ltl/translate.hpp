#pragma once

#include "hardattn/brasp/program.hpp"
#include "hardattn/ltl/formula.hpp"

namespace hardattn::ltl {

struct ToBraspOptions {
  /// Reject formulas containing until.
  bool until_free = false;
};

/// One vector per distinct subformula; since becomes rightmost attention
/// over j<i, until leftmost attention over j>i (non-strict forms use j<=i
/// and j>=i).
brasp::Program ltl_to_brasp(const Formula& f, const Alphabet& alphabet, ToBraspOptions options = {});

/// Normalizes scores and values to read only j, then expresses every vector
/// as a formula. The result is a DAG; shared vectors share subformulas.
Formula brasp_to_ltl(const brasp::Program& prog);

/// Formula for every vector of a normalized program (index = vector).
std::vector<Formula> vector_formulas(const brasp::Program& normalized);

}  // namespace hardattn::ltl
