#include "hardattn/core/rational.hpp"

#include "hardattn/core/error.hpp"

namespace hardattn {

Rational::Rational(long num, long den) {
  if (den == 0) throw Error("zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(const mpq_class& value) : v_(value) { v_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(mpq_class(mpz_class(s, 10)));
    mpz_class num(s.substr(0, slash), 10);
    mpz_class den(s.substr(slash + 1), 10);
    if (den == 0) throw Error("zero denominator in '" + s + "'");
    return Rational(mpq_class(num, den));
  } catch (const std::invalid_argument&) {
    throw Error("malformed rational '" + s + "'");
  }
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::optional<Rational> Rational::exact_sqrt() const {
  if (sign() < 0) return std::nullopt;
  mpz_class num = v_.get_num(), den = v_.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return Rational(mpq_class(rn, rd));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error("division by zero");
  v_ /= o.v_;
  return *this;
}

namespace {

std::size_t hash_mpz(const mpz_class& z, std::size_t seed) {
  std::size_t h = seed ^ static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1);
  std::size_t limbs = mpz_size(z.get_mpz_t());
  for (std::size_t k = 0; k < limbs; ++k) {
    h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), k));
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::size_t Rational::hash() const {
  return hash_mpz(v_.get_den(), hash_mpz(v_.get_num(), 14695981039346656037ULL));
}

Rational relu(const Rational& x) { return x.sign() > 0 ? x : Rational(0); }

Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace hardattn
