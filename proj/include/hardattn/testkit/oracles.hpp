#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hardattn/core/alphabet.hpp"
#include "hardattn/ltl/formula.hpp"
#include "hardattn/testkit/recognizer.hpp"

namespace hardattn::testkit {

// Language oracles, written from the definitions. Each takes the alphabet
// it is defined over and reads symbols by name.

/// Dyck-1 of depth at most 2 over l, r.
LanguageOracle dyck12_oracle();
/// Strings over {a,b,#} ending in #.
LanguageOracle ends_hash_oracle();
/// Strings ending in # b* #.
LanguageOracle hash_b_hash_oracle();
/// Strings ending in # a* # b* #.
LanguageOracle hash_a_hash_b_hash_oracle();
/// Exactly the strings # a* # b* #.
LanguageOracle exact_hash_a_hash_b_hash_oracle();
/// Exactly the strings # a^m # b^m #, m >= 0.
LanguageOracle hash_am_hash_bm_hash_oracle();
/// (ab)+ over {a,b}.
LanguageOracle ab_star_oracle();
/// (a+b+)+ over {a,b}.
LanguageOracle a_plus_b_plus_star_oracle();
/// Words over {a} of even length.
LanguageOracle even_length_oracle();
/// A3 over {L,R}: a counter in 0..3 moved by R (up) and L (down), clamped,
/// accepting when it ends at 0.
LanguageOracle a3_oracle();
/// STAIR_k over {a,b,c}: deleting every c leaves a string containing a^k.
LanguageOracle stair_oracle(std::size_t k);

Alphabet stair_alphabet();

/// gamma_1 = Qa, gamma_k = Qa & (Qc S gamma_{k-1}); the result is
/// gamma_k | (1 S gamma_k), which also counts a^k ending at the last
/// position. Throws for k = 0.
ltl::Formula stair_formula(std::size_t k);

/// Associative recall: at every key position the key itself; at every
/// value position the value that followed the previous occurrence of the
/// same key, or ? when there is none. Keys are a, b, c; values 1, 2, 3.
std::vector<std::string> recall_oracle(const std::vector<std::string>& tokens);

}  // namespace hardattn::testkit
