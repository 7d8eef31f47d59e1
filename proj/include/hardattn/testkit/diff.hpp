#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hardattn/core/alphabet.hpp"
#include "hardattn/testkit/recognizer.hpp"

namespace hardattn::testkit {

/// Number of words of length 1..max_len over k symbols; saturates.
std::uint64_t count_words(std::size_t k, std::size_t max_len);

/// Every word of length 1..max_len, in length-lexicographic order.
void for_each_word(std::size_t k, std::size_t max_len, const std::function<void(const Word&)>& fn);

/// The index-th word of the given length, lexicographically.
Word word_at(std::size_t k, std::size_t length, std::uint64_t index);

struct Mismatch {
  Word word;
  bool lhs = false;
  bool rhs = false;
};

struct DiffReport {
  std::string lhs_name;
  std::string rhs_name;
  std::size_t bound = 0;
  std::uint64_t checked = 0;
  std::uint64_t mismatch_count = 0;
  /// Shortest first; at most DiffOptions::max_reported entries.
  std::vector<Mismatch> mismatches;

  bool equal() const { return mismatch_count == 0; }
  /// "<n> mismatches (<checked> strings, length <= N)" and witnesses.
  std::string summary(const Alphabet& alphabet) const;
};

struct DiffOptions {
  std::size_t jobs = 1;
  std::uint64_t max_strings = 10'000'000;
  std::size_t max_reported = 20;
  std::string lhs_name = "lhs";
  std::string rhs_name = "rhs";
};

/// Compares a and b on every word of length 1..bound. Throws when the
/// number of words exceeds options.max_strings.
DiffReport diff_languages(const Recognizer& a, const Recognizer& b, const Alphabet& alphabet, std::size_t bound,
                          const DiffOptions& options = {});

/// u a v in L iff u a a v in L fails for this choice.
struct StutterWitness {
  Word u;
  Symbol a = 0;
  Word v;
  bool short_in = false;  // u a v in L
  bool long_in = false;   // u a a v in L
};

struct StutterResult {
  bool invariant = true;
  std::uint64_t checked = 0;
  std::optional<StutterWitness> witness;
};

/// Checks the stutter biconditional for every u, a, v with |uav| <= bound,
/// shortest uav first; stops at the first failure.
StutterResult stutter_invariant_up_to(const Recognizer& l, const Alphabet& alphabet, std::size_t bound);

std::string describe(const StutterWitness& w, const Alphabet& alphabet);

}  // namespace hardattn::testkit
