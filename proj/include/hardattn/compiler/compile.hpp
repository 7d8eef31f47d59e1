#pragma once

#include <cstddef>

#include "hardattn/brasp/program.hpp"
#include "hardattn/transformer/model.hpp"

namespace hardattn::compiler {

/// One layer per positionwise operation and two per attention operation.
/// Coordinate t < num_vectors holds P_t after the last layer; predicate
/// families become position-embedding coordinates right after them. Each
/// attention operation also gets scratch coordinates: query bits alpha_l,
/// key bits beta_l, a default flag pair and copies g_k of its j-atoms, with
/// attended_k receiving g_k of the chosen position.
transformer::Transformer compile_naive(const brasp::Program& prog);

/// One layer per level of attention depth: all attention operations of
/// depth l run as heads of layer l and everything of depth l, plus the
/// scratch for depth l+1, is fused into that layer's FFN. Depth-0 vectors
/// live in the embedding. Programs with predicates are rejected.
transformer::Transformer compile_depth_preserving(const brasp::Program& prog);

/// Layer count of compile_naive: 2 per attention op, 1 per positionwise op.
std::size_t naive_layer_count(const brasp::Program& prog);

}  // namespace hardattn::compiler
