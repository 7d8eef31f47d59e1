#pragma once

#include <cstddef>
#include <vector>

#include "hardattn/core/alphabet.hpp"
#include "hardattn/ltl/formula.hpp"
#include "hardattn/predicates/family.hpp"

namespace hardattn::ltl {

/// Truth value of f at every position 1..n (index i-1).
std::vector<bool> ltl_eval_all(const Formula& f, const Alphabet& alphabet, const Word& input,
                               const predicates::PredicateBindings& preds = {});

/// w, i |= f for 1 <= i <= n.
bool ltl_eval(const Formula& f, const Alphabet& alphabet, const Word& input, std::size_t i,
              const predicates::PredicateBindings& preds = {});

/// w |= f at the last position.
bool ltl_accepts(const Formula& f, const Alphabet& alphabet, const Word& input,
                 const predicates::PredicateBindings& preds = {});

}  // namespace hardattn::ltl
