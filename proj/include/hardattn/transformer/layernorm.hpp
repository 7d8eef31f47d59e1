#pragma once

#include "hardattn/transformer/model.hpp"

namespace hardattn::transformer {

/// Pair encoding: coordinate c becomes (x_c, 1 - x_c), so a Boolean activation
/// is (1,0) for true and (0,1) for false. Every residual sum then has mean 1/2
/// and variance 1/4, and each layer gets layernorms with gamma = beta = 1/2,
/// which act as the identity. Throws for non-Boolean embeddings, value biases
/// or existing layernorms.
Transformer apply_layernorm_encoding(const Transformer& t);

/// First coordinate of every pair.
Vector decode_pairs(const Vector& encoded);

}  // namespace hardattn::transformer
