#pragma once

#include <cstddef>
#include <cstdint>

#include "hardattn/brasp/program.hpp"

namespace hardattn::testkit {

struct RandomProgramOptions {
  std::size_t max_ops = 6;
  std::size_t max_atoms = 3;
  /// Only unmasked and non-strict masks.
  bool nonstrict = true;
};

/// Acceptor over the given alphabet, fully determined by seed.
brasp::Program random_program(std::uint64_t seed, const Alphabet& alphabet, const RandomProgramOptions& options = {});

}  // namespace hardattn::testkit
