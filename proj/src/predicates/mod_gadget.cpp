#include "hardattn/predicates/mod_gadget.hpp"

namespace hardattn::predicates {

ModReluGadget::ModReluGadget(unsigned r, unsigned m) : r_(r), m_(m) {
  if (m == 0) throw Error("MOD modulus must be positive");
  if (r >= m) throw Error("MOD residue must be smaller than the modulus");
  Rational turn(static_cast<long>(r), static_cast<long>(m));
  w_sin_ = PeScalar::sin_turns(turn);
  w_cos_ = PeScalar::cos_turns(turn);
  bias_cos_ = PeScalar::cos_turns(Rational(1, static_cast<long>(m)));
}

std::optional<Rational> ModReluGadget::exact_output(const PeScalar& sin_i, const PeScalar& cos_i) const {
  if (m_ == 1) return Rational(1);
  if (!sin_i.is_rational() || !cos_i.is_rational() || !w_sin_.is_rational() || !w_cos_.is_rational() ||
      !bias_cos_.is_rational())
    return std::nullopt;
  Rational h = relu(w_sin_.rational_value() * sin_i.rational_value() +
                    w_cos_.rational_value() * cos_i.rational_value() - bias_cos_.rational_value());
  return h / (Rational(1) - bias_cos_.rational_value());
}

bool ModReluGadget::evaluate(const PositionEmbedding& pe, std::size_t n, std::size_t i) const {
  if (m_ == 1) return true;
  const auto& freqs = pe.frequencies();
  Rational want(1, static_cast<long>(m_));
  std::size_t k = 0;
  while (k < freqs.size() && !(freqs[k] == want)) ++k;
  if (k == freqs.size())
    throw Error("position embedding lacks the sin/cos coordinates of frequency " + want.str());
  PeVector v = pe.at(n, i);
  const PeScalar& s = v[2 * k];
  const PeScalar& c = v[2 * k + 1];
  if (auto exact = exact_output(s, c)) {
    if (*exact == Rational(1)) return true;
    if (exact->is_zero()) return false;
    throw Error("MOD gadget produced non-Boolean value " + exact->str());
  }
  // sin(a)sin(b) + cos(a)cos(b) = cos(a - b), once the coordinates are
  // confirmed to be sin/cos of i/m.
  Rational t(static_cast<long>(i), static_cast<long>(m_));
  if (!(s == PeScalar::sin_turns(t)) || !(c == PeScalar::cos_turns(t)))
    throw Error("position embedding coordinates are not sin/cos of frequency " + want.str());
  PeScalar pre = PeScalar::cos_turns(t - Rational(static_cast<long>(r_), static_cast<long>(m_)));
  if (pre == PeScalar::rational(1)) return true;  // h = 1 - cos(2pi/m), scaled to 1
  if (pre <= bias_cos_) return false;             // h = 0
  throw Error("MOD gadget produced a non-Boolean value");
}

ModReluGadget mod_relu_gadget(unsigned r, unsigned m) { return ModReluGadget(r, m); }

}  // namespace hardattn::predicates
