#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "hardattn/brasp/eval.hpp"
#include "hardattn/brasp/program.hpp"
#include "hardattn/compiler/value_set.hpp"
#include "hardattn/predicates/family.hpp"
#include "hardattn/transformer/model.hpp"

namespace hardattn::compiler {

enum class DecompileVariant {
  /// One attention level per layer, O(|F|) operations per head.
  Shallower,
  /// A chain of maximum-bit operations, O(B) operations per head.
  Smaller,
};

/// Bit of an activation code: a constant, or the value of a program vector.
struct CodeBit {
  std::optional<bool> constant;
  std::size_t vector = 0;

  bool value(const brasp::Trace& trace, std::size_t position) const {
    return constant ? *constant : trace.at(vector, position);
  }
};

struct Decompiled {
  brasp::Program program;
  /// Predicate families for sinusoidal position embeddings (PE<s>[c,b]),
  /// added to the bindings passed in.
  predicates::PredicateBindings bindings;
  ValueSet values;
  /// bits[c][b]: bit b of the code of final-layer coordinate c.
  std::vector<std::vector<CodeBit>> bits;
};

/// B-RASP program computing the bit encoding of every activation, using the
/// enumerated value set. Accepts iff the transformer does; without an
/// output layer the output vector is constant 0. Layernorm is unsupported.
Decompiled decompile(const transformer::Transformer& t, DecompileVariant variant,
                     const predicates::PredicateBindings& bindings = {});

DecompileVariant parse_variant(std::string_view text);

}  // namespace hardattn::compiler
