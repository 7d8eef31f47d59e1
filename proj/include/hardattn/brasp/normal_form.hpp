#pragma once

#include <cstddef>

#include "hardattn/brasp/program.hpp"

namespace hardattn::brasp {

/// Rewrites every attention value to read only j-atoms.
Program normalize_unary_value(const Program& prog);

/// Rewrites every attention score to read only j-atoms, splitting on the
/// truth assignments of the i-atoms.
Program normalize_unary_score(const Program& prog);

/// Attention depth of vector t.
std::size_t vector_depth(const Program& prog, std::size_t vector);
/// Maximum over all operations; 0 for programs without attention.
std::size_t attention_depth(const Program& prog);

}  // namespace hardattn::brasp
