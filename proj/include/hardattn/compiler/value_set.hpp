#pragma once

#include <cstddef>
#include <vector>

#include "hardattn/core/rational.hpp"
#include "hardattn/transformer/model.hpp"

namespace hardattn::compiler {

/// Largest activation set enumerate_value_set will build for one layer.
inline constexpr std::size_t kMaxValueSetSize = std::size_t{1} << 21;

/// Possible values of a transformer, layer by layer, independent of input.
struct ValueSet {
  /// activations[l]: distinct activation vectors after layer l (0 = the
  /// embedding), sorted.
  std::vector<std::vector<transformer::Vector>> activations;
  /// mids[l-1]: distinct activations of layer l after attention, sorted.
  std::vector<std::vector<transformer::Vector>> mids;
  /// scores[l-1][h]: distinct attention scores of head h of layer l, sorted.
  std::vector<std::vector<std::vector<Rational>>> scores;
  /// Every activation component, score and attention output, sorted. The
  /// code of a value is its index here.
  std::vector<Rational> values;
  std::size_t bits = 1;

  std::size_t code(const Rational& v) const;
  bool bit(const Rational& v, std::size_t b) const { return ((code(v) >> b) & 1) != 0; }
  bool contains(std::size_t layer, const transformer::Vector& x) const;
};

/// Embedding plus every value of a finite-image position embedding.
std::vector<transformer::Vector> initial_activations(const transformer::Transformer& t);

/// Distinct position-embedding contributions (full-width vectors), sorted.
/// Throws for sinusoidal embeddings with irrational values.
std::vector<transformer::Vector> position_images(const transformer::Transformer& t);

/// Closure of the possible activations: for each layer, the activation of
/// a position combined with any choice of attended activation (or none) per
/// head, then the FFN. Throws when a set exceeds kMaxValueSetSize.
ValueSet enumerate_value_set(const transformer::Transformer& t);

/// Distinct restrictions of the vectors to coords, sorted.
std::vector<transformer::Vector> projections(const std::vector<transformer::Vector>& xs,
                                             const std::vector<std::size_t>& coords);

/// (|alphabet| + 1)^(2^layer) - 1, saturating at SIZE_MAX.
std::size_t finite_image_bound(std::size_t alphabet_size, std::size_t layer);

/// Counting bound for layers with several heads, per layer l:
/// f(0) = |alphabet|, f(l) = f(l-1) (f(l-1) + 1)^heads(l). Saturates.
std::vector<std::size_t> multihead_image_bounds(const transformer::Transformer& t);

}  // namespace hardattn::compiler
