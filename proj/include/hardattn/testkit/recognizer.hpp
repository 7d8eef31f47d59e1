#pragma once

#include <functional>
#include <string>

#include "hardattn/automata/dfa.hpp"
#include "hardattn/brasp/program.hpp"
#include "hardattn/core/alphabet.hpp"
#include "hardattn/ltl/formula.hpp"
#include "hardattn/predicates/family.hpp"
#include "hardattn/transformer/model.hpp"

namespace hardattn::testkit {

/// Membership test on non-empty words. Must be pure.
using Recognizer = std::function<bool(const Word&)>;

/// A recognizer with a display name; oracles are written directly from the
/// language definition.
struct LanguageOracle {
  std::string name;
  Recognizer accepts;
};

Recognizer recognizer(const brasp::Program& prog, predicates::PredicateBindings bindings = {});
Recognizer recognizer(const ltl::Formula& f, const Alphabet& alphabet, predicates::PredicateBindings bindings = {});
Recognizer recognizer(const automata::Dfa& a);
Recognizer recognizer(const transformer::Transformer& t, predicates::PredicateBindings bindings = {});

}  // namespace hardattn::testkit
