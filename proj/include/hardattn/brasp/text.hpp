#pragma once

#include <string>
#include <string_view>

#include "hardattn/brasp/program.hpp"

namespace hardattn::brasp {

/// Parses the line-oriented program format:
///
///   alphabet: l r
///   P_l(i) := [rightmost, j<i] 1 ? Q_l(j) : 0
///   I(i) := (Q_l(i) & S_r(i)) | (Q_r(i) & P_l(i))
///   output: Y
///
/// Optional headers: "predicates: Mid MOD[0,2]" and
/// "transduce: a->Y_a b->Y_b" instead of "output:".
/// Lines whose first non-blank character is '#' are comments; in operation
/// lines a '#' where a token would start begins a comment.
Program parse_program(std::string_view text);

/// Canonical source text; parse_program(print_program(p)) == p.
std::string print_program(const Program& prog);

std::string print_expr(const Program& prog, const BoolExpr& e);

}  // namespace hardattn::brasp
