#include "esqpt/bigfloat.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace esqpt {

BigFloat BigFloat::from_string(const std::string& s, int bits) {
  BigFloat r(0.0, bits);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0 && !mpfr_number_p(r.v_))
    throw std::invalid_argument("BigFloat: cannot parse '" + s + "'");
  return r;
}

BigFloat BigFloat::pow2(long e, int bits) {
  BigFloat r(0.0, bits);
  mpfr_set_si_2exp(r.v_, 1, e, MPFR_RNDN);
  return r;
}

double BigFloat::log_d() const {
  mpfr_t t;
  mpfr_init2(t, 64);
  mpfr_log(t, v_, MPFR_RNDN);
  const double r = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return r;
}

std::string BigFloat::to_string(int significant_digits) const {
  int digits = significant_digits;
  if (digits <= 0)
    digits = static_cast<int>(precision_bits() * 0.30103) + 2;
  const int n = mpfr_snprintf(nullptr, 0, "%.*Re", digits - 1, v_);
  std::vector<char> buf(static_cast<std::size_t>(n) + 1);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
  return std::string(buf.data());
}

#define ESQPT_BF_BINOP(op, fn)                                       \
  BigFloat operator op(const BigFloat& a, const BigFloat& b) {       \
    BigFloat r(0.0, static_cast<int>(BigFloat::join(a, b)));         \
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                 \
    return r;                                                        \
  }

ESQPT_BF_BINOP(+, mpfr_add)
ESQPT_BF_BINOP(-, mpfr_sub)
ESQPT_BF_BINOP(*, mpfr_mul)
ESQPT_BF_BINOP(/, mpfr_div)
#undef ESQPT_BF_BINOP

BigFloat operator-(const BigFloat& a) {
  BigFloat r(0.0, a.precision_bits());
  mpfr_neg(r.v_, a.v_, MPFR_RNDN);
  return r;
}

BigFloat operator+(const BigFloat& a, double b) {
  BigFloat r(0.0, a.precision_bits());
  mpfr_add_d(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}
BigFloat operator-(const BigFloat& a, double b) {
  BigFloat r(0.0, a.precision_bits());
  mpfr_sub_d(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}
BigFloat operator*(const BigFloat& a, double b) {
  BigFloat r(0.0, a.precision_bits());
  mpfr_mul_d(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}
BigFloat operator/(const BigFloat& a, double b) {
  BigFloat r(0.0, a.precision_bits());
  mpfr_div_d(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}
BigFloat operator+(double a, const BigFloat& b) { return b + a; }
BigFloat operator-(double a, const BigFloat& b) {
  BigFloat r(0.0, b.precision_bits());
  mpfr_d_sub(r.v_, a, b.v_, MPFR_RNDN);
  return r;
}
BigFloat operator*(double a, const BigFloat& b) { return b * a; }
BigFloat operator/(const BigFloat& a, int b) {
  BigFloat r(0.0, a.precision_bits());
  mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}

BigFloat& BigFloat::operator+=(const BigFloat& o) {
  if (precision_bits() < o.precision_bits()) mpfr_prec_round(v_, o.precision_bits(), MPFR_RNDN);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator-=(const BigFloat& o) {
  if (precision_bits() < o.precision_bits()) mpfr_prec_round(v_, o.precision_bits(), MPFR_RNDN);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat sqrt(const BigFloat& a) {
  BigFloat r(0.0, a.precision_bits());
  mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
  return r;
}

BigFloat abs(const BigFloat& a) {
  BigFloat r(0.0, a.precision_bits());
  mpfr_abs(r.v_, a.v_, MPFR_RNDN);
  return r;
}

}  // namespace esqpt
