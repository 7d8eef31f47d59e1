#include "hardattn/predicates/position_embedding.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <memory>
#include <numbers>

namespace hardattn::predicates {

namespace {

using boost::multiprecision::cpp_bin_float_50;
using boost::multiprecision::cpp_bin_float_100;

Rational frac_part(const Rational& t) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), t.raw().get_num_mpz_t(), t.raw().get_den_mpz_t());
  return t - Rational(mpq_class(q));
}

template <class Float>
Float to_float(const Rational& r) {
  Float num(r.numerator().get_str());
  Float den(r.denominator().get_str());
  return num / den;
}

template <class Float>
Float cos_value(const Rational& turns) {
  using std::cos;
  Float two_pi = boost::math::constants::two_pi<Float>();
  return cos(two_pi * to_float<Float>(turns));
}

/// Sign of cos(2 pi t) - r, refined until the answer is unambiguous.
int compare_trig_rational(const Rational& turns, const Rational& r) {
  {
    cpp_bin_float_50 d = cos_value<cpp_bin_float_50>(turns) - to_float<cpp_bin_float_50>(r);
    if (abs(d) > cpp_bin_float_50("1e-40")) return d > 0 ? 1 : -1;
  }
  cpp_bin_float_100 d = cos_value<cpp_bin_float_100>(turns) - to_float<cpp_bin_float_100>(r);
  if (abs(d) > cpp_bin_float_100("1e-90")) return d > 0 ? 1 : -1;
  throw Error("cannot order cos(2pi*" + turns.str() + ") against " + r.str());
}

}  // namespace

PeScalar PeScalar::rational(Rational value) {
  PeScalar s;
  s.value_ = std::move(value);
  return s;
}

PeScalar PeScalar::cos_turns(const Rational& t) {
  Rational u = frac_part(t);
  if (u > Rational(1, 2)) u = Rational(1) - u;
  if (u == Rational(0)) return rational(1);
  if (u == Rational(1, 6)) return rational(Rational(1, 2));
  if (u == Rational(1, 4)) return rational(0);
  if (u == Rational(1, 3)) return rational(Rational(-1, 2));
  if (u == Rational(1, 2)) return rational(-1);
  PeScalar s;
  s.trig_ = true;
  s.value_ = u;
  return s;
}

PeScalar PeScalar::sin_turns(const Rational& t) { return cos_turns(t - Rational(1, 4)); }

const Rational& PeScalar::rational_value() const {
  if (trig_) throw Error("position embedding value " + str() + " is irrational");
  return value_;
}

std::string PeScalar::str() const {
  if (!trig_) return value_.str();
  return "cos(2pi*" + value_.str() + ")";
}

double PeScalar::approx() const {
  if (!trig_) return value_.to_double();
  return std::cos(2 * std::numbers::pi * value_.to_double());
}

bool operator==(const PeScalar& a, const PeScalar& b) {
  return a.trig_ == b.trig_ && a.value_ == b.value_;
}

std::strong_ordering operator<=>(const PeScalar& a, const PeScalar& b) {
  if (!a.trig_ && !b.trig_) return a.value_ <=> b.value_;
  if (a.trig_ && b.trig_) return b.value_ <=> a.value_;
  if (a.trig_) return compare_trig_rational(a.value_, b.value_) < 0 ? std::strong_ordering::less
                                                                   : std::strong_ordering::greater;
  return compare_trig_rational(b.value_, a.value_) < 0 ? std::strong_ordering::greater
                                                       : std::strong_ordering::less;
}

PositionEmbedding::PositionEmbedding(std::string name, std::size_t dim, Evaluator eval,
                                     std::optional<FiniteImage> certificate)
    : name_(std::move(name)), dim_(dim), eval_(std::move(eval)), certificate_(std::move(certificate)) {}

PeVector PositionEmbedding::at(std::size_t n, std::size_t i) const {
  if (i < 1 || i > n) throw Error("position out of range for position embedding");
  PeVector v = eval_(n, i);
  if (v.size() != dim_) throw Error("position embedding '" + name_ + "' returned wrong dimension");
  return v;
}

std::vector<Rational> PositionEmbedding::rational_at(std::size_t n, std::size_t i) const {
  std::vector<Rational> out;
  for (const auto& s : at(n, i)) out.push_back(s.rational_value());
  return out;
}

std::vector<PeVector> PositionEmbedding::image() const {
  if (!certificate_) throw Error("position embedding '" + name_ + "' has no finite-image certificate");
  std::vector<PeVector> out = certificate_->values;
  if (certificate_->period)
    for (std::size_t i = 1; i <= *certificate_->period; ++i) out.push_back(at(*certificate_->period, i));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PositionEmbedding sinusoidal_pe(const std::vector<Rational>& frequencies) {
  mpz_class period = 1;
  for (const auto& f : frequencies) mpz_lcm(period.get_mpz_t(), period.get_mpz_t(), f.raw().get_den_mpz_t());
  if (!period.fits_ulong_p()) throw Error("sinusoidal period too large");
  FiniteImage cert{static_cast<std::size_t>(period.get_ui()), {}};
  auto freqs = frequencies;
  PositionEmbedding pe("sinusoidal", 2 * frequencies.size(),
                       [freqs](std::size_t, std::size_t i) {
                         PeVector v;
                         for (const auto& f : freqs) {
                           Rational t = f * Rational(static_cast<long>(i));
                           v.push_back(PeScalar::sin_turns(t));
                           v.push_back(PeScalar::cos_turns(t));
                         }
                         return v;
                       },
                       cert);
  pe.set_frequencies(frequencies);
  return pe;
}

PositionEmbedding predicate_pe(std::vector<PredicateFamily> families) {
  std::size_t k = families.size();
  if (k > 16) throw Error("too many predicate coordinates");
  FiniteImage cert;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    PeVector v;
    for (std::size_t c = 0; c < k; ++c) v.push_back(PeScalar::rational(Rational(static_cast<long>((mask >> c) & 1))));
    cert.values.push_back(std::move(v));
  }
  std::string name = "predicates";
  auto fams = std::make_shared<std::vector<PredicateFamily>>(std::move(families));
  return PositionEmbedding(name, k,
                           [fams](std::size_t n, std::size_t i) {
                             PeVector v;
                             for (const auto& f : *fams) v.push_back(PeScalar::rational(f(n, i) ? 1 : 0));
                             return v;
                           },
                           cert);
}

PositionEmbedding constant_pe(const std::vector<Rational>& value) {
  PeVector v;
  for (const auto& r : value) v.push_back(PeScalar::rational(r));
  FiniteImage cert{std::nullopt, {v}};
  return PositionEmbedding("constant", v.size(), [v](std::size_t, std::size_t) { return v; }, cert);
}

std::size_t PeBitEncoding::code(const PeScalar& v) const {
  auto it = std::lower_bound(values.begin(), values.end(), v);
  if (it == values.end() || !(*it == v)) throw Error("position embedding value " + v.str() + " outside the certified image");
  return static_cast<std::size_t>(it - values.begin());
}

std::string PeBitEncoding::family_name(std::size_t coord, std::size_t bit) const {
  return prefix + "[" + std::to_string(coord) + "," + std::to_string(bit) + "]";
}

PeBitEncoding bind_pe_as_predicates(const PositionEmbedding& pe, const std::string& prefix) {
  auto enc = std::make_shared<PeBitEncoding>();
  enc->prefix = prefix;
  for (const auto& v : pe.image())
    for (const auto& s : v) enc->values.push_back(s);
  std::sort(enc->values.begin(), enc->values.end());
  enc->values.erase(std::unique(enc->values.begin(), enc->values.end()), enc->values.end());
  enc->bits = 1;
  while ((std::size_t{1} << enc->bits) < enc->values.size()) ++enc->bits;
  auto shared_pe = std::make_shared<PositionEmbedding>(pe);
  std::vector<PredicateFamily> families;
  for (std::size_t c = 0; c < pe.dim(); ++c)
    for (std::size_t b = 0; b < enc->bits; ++b)
      families.emplace_back(enc->family_name(c, b), [enc, shared_pe, c, b](std::size_t n, std::size_t i) {
        return ((enc->code(shared_pe->at(n, i)[c]) >> b) & 1) == 1;
      });
  PeBitEncoding out = *enc;
  out.families = std::move(families);
  return out;
}

}  // namespace hardattn::predicates
