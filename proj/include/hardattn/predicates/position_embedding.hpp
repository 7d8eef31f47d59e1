#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hardattn/core/rational.hpp"
#include "hardattn/predicates/family.hpp"

namespace hardattn::predicates {

/// A position-embedding value: either a rational, or cos(2*pi*t) for a
/// rational t whose cosine is irrational. Comparisons are exact.
class PeScalar {
 public:
  PeScalar() = default;
  static PeScalar rational(Rational value);
  /// cos(2*pi*t). Rational results (t a multiple of 1/6 or 1/4) collapse to
  /// plain rationals.
  static PeScalar cos_turns(const Rational& t);
  /// sin(2*pi*t) = cos(2*pi*(t - 1/4)).
  static PeScalar sin_turns(const Rational& t);

  bool is_rational() const { return !trig_; }
  const Rational& rational_value() const;
  /// Canonical turn count in [0, 1/2] for the cosine form.
  const Rational& turns() const { return value_; }

  std::string str() const;
  double approx() const;

  friend bool operator==(const PeScalar& a, const PeScalar& b);
  friend std::strong_ordering operator<=>(const PeScalar& a, const PeScalar& b);

 private:
  bool trig_ = false;
  Rational value_;
};

using PeVector = std::vector<PeScalar>;

/// Certificate that the embedding has finitely many values: either a period
/// p with theta_n(i) depending only on i mod p, or an explicit value list.
struct FiniteImage {
  std::optional<std::size_t> period;
  std::vector<PeVector> values;
};

/// A family theta_n(i) of fixed-dimension vectors.
class PositionEmbedding {
 public:
  using Evaluator = std::function<PeVector(std::size_t n, std::size_t i)>;

  PositionEmbedding(std::string name, std::size_t dim, Evaluator eval,
                    std::optional<FiniteImage> certificate);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  PeVector at(std::size_t n, std::size_t i) const;
  /// Rational values at (n, i); throws if any coordinate is irrational.
  std::vector<Rational> rational_at(std::size_t n, std::size_t i) const;

  bool has_certificate() const { return certificate_.has_value(); }
  /// Distinct vectors of the image, sorted. Throws without a certificate.
  std::vector<PeVector> image() const;

  /// Frequencies, for sinusoidal embeddings.
  const std::vector<Rational>& frequencies() const { return frequencies_; }
  void set_frequencies(std::vector<Rational> f) { frequencies_ = std::move(f); }

 private:
  std::string name_;
  std::size_t dim_;
  Evaluator eval_;
  std::optional<FiniteImage> certificate_;
  std::vector<Rational> frequencies_;
};

/// Coordinates sin(2 pi f i), cos(2 pi f i) per frequency f; period is the
/// lcm of the denominators.
PositionEmbedding sinusoidal_pe(const std::vector<Rational>& frequencies);

/// One 0/1 coordinate per predicate family.
PositionEmbedding predicate_pe(std::vector<PredicateFamily> families);

PositionEmbedding constant_pe(const std::vector<Rational>& value);

/// Bit encoding of PE values. All values occurring in any coordinate are
/// sorted and numbered densely; family "<prefix>[c,b]" is bit b of the code
/// of coordinate c.
struct PeBitEncoding {
  std::vector<PeScalar> values;
  std::size_t bits = 1;
  std::vector<PredicateFamily> families;

  std::size_t code(const PeScalar& v) const;
  std::string family_name(std::size_t coord, std::size_t bit) const;
  std::string prefix;
};

PeBitEncoding bind_pe_as_predicates(const PositionEmbedding& pe, const std::string& prefix = "PE");

}  // namespace hardattn::predicates
