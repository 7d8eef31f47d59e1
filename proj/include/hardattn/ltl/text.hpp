#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hardattn/core/alphabet.hpp"
#include "hardattn/ltl/formula.hpp"

namespace hardattn::ltl {

/// Syntax: atoms Qa, PRED:Name, 0, 1; operators ! (tightest), then infix
/// S, U, S', U' (right associative), then &, then |; parentheses.
Formula parse_formula(std::string_view text);

/// Fully parenthesized text accepted by parse_formula. Throws when the tree
/// size exceeds max_tree_size.
std::string to_string(const Formula& f, std::uint64_t max_tree_size = 1'000'000);

/// A formula file: optional "alphabet:" and "predicates:" header lines,
/// '#' comment lines, and the formula text.
struct FormulaFile {
  std::optional<Alphabet> alphabet;
  std::vector<std::string> predicates;
  Formula formula;
};

FormulaFile parse_formula_file(std::string_view text);
std::string print_formula_file(const FormulaFile& file);

}  // namespace hardattn::ltl
