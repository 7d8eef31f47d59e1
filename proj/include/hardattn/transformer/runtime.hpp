#pragma once

#include <optional>
#include <vector>

#include "hardattn/predicates/family.hpp"
#include "hardattn/transformer/model.hpp"

namespace hardattn::transformer {

/// Activations of one run. layers[0] holds the embeddings and layers[l] the
/// output of layer l; mid[l-1] holds layer l's activations after the
/// attention sublayer. attended[l-1][h][i-1] is the 1-based position head h
/// chose at position i, or empty when every position was masked.
struct ActivationTrace {
  std::vector<std::vector<Vector>> layers;
  std::vector<std::vector<Vector>> mid;
  std::vector<std::vector<std::vector<std::optional<std::size_t>>>> attended;
  /// Residual sums entering each layernorm, per layer; empty when the layer
  /// has no such norm.
  std::vector<std::vector<Vector>> pre_attention_norm;
  std::vector<std::vector<Vector>> pre_ffn_norm;
  std::optional<Rational> output;

  const std::vector<Vector>& final_layer() const { return layers.back(); }
};

/// Embedding plus position embeddings at (n, i); throws on irrational values.
std::vector<Vector> embed(const Transformer& t, const Word& w,
                          const predicates::PredicateBindings& bindings = {});

ActivationTrace run_transformer(const Transformer& t, const Word& w,
                                const predicates::PredicateBindings& bindings = {});

/// Output of the output layer at the last position is nonnegative.
bool accepts_transformer(const Transformer& t, const Word& w,
                         const predicates::PredicateBindings& bindings = {});

/// Single-layer pieces, exposed for tests and for value-set enumeration.
Vector apply_ffn(const FeedForward& f, const Vector& x);
Vector apply_layernorm(const LayerNorm& norm, const Vector& x);
/// Value map of a head applied to an attended activation.
Vector head_value(const AttentionHead& h, const Vector& x);

}  // namespace hardattn::transformer
