#pragma once

#include <cstddef>
#include <optional>

#include "hardattn/predicates/position_embedding.hpp"

namespace hardattn::predicates {

/// Two-layer ReLU network computing MOD[r,m](i) from the sin/cos coordinates
/// of frequency 1/m:
///   h(i) = relu(sin(2 pi r/m) sin(2 pi i/m) + cos(2 pi r/m) cos(2 pi i/m) - cos(2 pi/m))
///   out  = h(i) / (1 - cos(2 pi/m))
class ModReluGadget {
 public:
  ModReluGadget(unsigned r, unsigned m);

  unsigned r() const { return r_; }
  unsigned m() const { return m_; }

  const PeScalar& weight_sin() const { return w_sin_; }
  const PeScalar& weight_cos() const { return w_cos_; }
  /// Hidden bias is -bias_cos().
  const PeScalar& bias_cos() const { return bias_cos_; }

  /// Evaluates on the PE at position i. Throws when the PE lacks
  /// frequency 1/m or the result is not exactly 0 or 1.
  bool evaluate(const PositionEmbedding& pe, std::size_t n, std::size_t i) const;

  /// Output when every value involved is rational; nullopt otherwise.
  std::optional<Rational> exact_output(const PeScalar& sin_i, const PeScalar& cos_i) const;

 private:
  unsigned r_, m_;
  PeScalar w_sin_, w_cos_, bias_cos_;
};

ModReluGadget mod_relu_gadget(unsigned r, unsigned m);

}  // namespace hardattn::predicates
