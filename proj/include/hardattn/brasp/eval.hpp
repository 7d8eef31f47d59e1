#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hardattn/brasp/program.hpp"
#include "hardattn/predicates/family.hpp"

namespace hardattn::brasp {

/// Value of every vector at every position.
struct Trace {
  std::vector<std::string> names;
  std::vector<std::vector<bool>> rows;  // rows[t][i-1]
  std::size_t length = 0;

  bool at(std::size_t vector, std::size_t position) const { return rows[vector][position - 1]; }
  /// Row rendered as 0/1 digits.
  std::string row_bits(std::size_t vector) const;
};

Trace eval(const Program& prog, const Word& input,
           const predicates::PredicateBindings& preds = {});

bool accepts(const Program& prog, const Word& input,
             const predicates::PredicateBindings& preds = {});

/// Output tokens, one per position.
std::vector<std::string> transduce_tokens(const Program& prog, const Word& input,
                                          const predicates::PredicateBindings& preds = {});
std::string transduce(const Program& prog, const Word& input,
                      const predicates::PredicateBindings& preds = {});

/// Fig.-style table: a header row with the input symbols, then one row per
/// vector, columns aligned.
std::string format_trace(const Program& prog, const Word& input, const Trace& trace);

}  // namespace hardattn::brasp
