#pragma once

#include <string>

#include "hardattn/automata/cascade.hpp"
#include "hardattn/automata/dfa.hpp"

namespace hardattn::automata {

/// {"alphabet": [...], "states": [...], "start": q, "finals": [...],
///  "transitions": [[q, a, r], ...]}
Dfa parse_dfa(const std::string& json_text);
std::string print_dfa(const Dfa& a);

/// {"alphabet": [...], "factors": [{"states", "start", "transitions"}, ...],
///  "homomorphism": {tuple: state}}. Factor transitions read "tuple,a" for
/// factors after the first; omitted transitions are self-loops.
Cascade parse_cascade(const std::string& json_text);
std::string print_cascade(const Cascade& c);

}  // namespace hardattn::automata
