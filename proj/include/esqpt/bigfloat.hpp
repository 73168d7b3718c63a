// bigfloat.hpp — RAII value type over MPFR arbitrary-precision reals
#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

namespace esqpt {

// Binary operations carry the larger precision of their operands; mixing
// with double/int adopts the BigFloat operand's precision. Values are
// independent, so instances may be used freely from concurrent threads.
class BigFloat {
 public:
  static constexpr int kDefaultBits = 256;

  BigFloat() { mpfr_init2(v_, kDefaultBits); mpfr_set_zero(v_, 1); }
  explicit BigFloat(double x, int bits = kDefaultBits) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  explicit BigFloat(int x, int bits = kDefaultBits) {
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  static BigFloat from_string(const std::string& s, int bits);
  // 2^e at the given precision
  static BigFloat pow2(long e, int bits);

  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, 64);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  int precision_bits() const { return static_cast<int>(mpfr_get_prec(v_)); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Natural log as a double; safe far below double underflow.
  double log_d() const;
  std::string to_string(int significant_digits = 0) const;  // 0 => full
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a);

  friend BigFloat operator+(const BigFloat& a, double b);
  friend BigFloat operator-(const BigFloat& a, double b);
  friend BigFloat operator*(const BigFloat& a, double b);
  friend BigFloat operator/(const BigFloat& a, double b);
  friend BigFloat operator+(double a, const BigFloat& b);
  friend BigFloat operator-(double a, const BigFloat& b);
  friend BigFloat operator*(double a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, int b);

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
  friend bool operator<(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
  friend bool operator>(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) > 0; }
  friend bool operator<=(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) <= 0; }
  friend bool operator>=(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) >= 0; }

  friend BigFloat sqrt(const BigFloat& a);
  friend BigFloat abs(const BigFloat& a);
  friend const BigFloat& max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }
  friend const BigFloat& min(const BigFloat& a, const BigFloat& b) { return a < b ? a : b; }

 private:
  mpfr_t v_;
  static mpfr_prec_t join(const BigFloat& a, const BigFloat& b) {
    return std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_));
  }
};

}  // namespace esqpt
