// eigensolver.hpp — symmetric tridiagonal eigensolver: Gershgorin bracketing,
// Sturm-count bisection, and inverse iteration, in double or MPFR arithmetic.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "esqpt/bigfloat.hpp"
#include "esqpt/model.hpp"

namespace esqpt::eig {

enum class Exec { Serial, Parallel };

template <class Real>
struct TridiagT {
  std::vector<Real> diag;
  std::vector<Real> offdiag;  // size = diag.size() - 1
  std::size_t size() const { return diag.size(); }
};
using Tridiag = TridiagT<double>;

struct PrecisionConfig {
  enum class Mode { Double, Arbitrary };
  Mode mode = Mode::Double;
  int mantissa_bits = 256;  // arbitrary mode only
  int eig_tol_exp2 = 0;     // relative tolerance = 2^exp; 0 selects the default

  static PrecisionConfig dbl() { return {}; }
  static PrecisionConfig mp(int bits) {
    PrecisionConfig p;
    p.mode = Mode::Arbitrary;
    p.mantissa_bits = bits;
    return p;
  }

  int tol_exp() const {
    if (eig_tol_exp2 != 0) return eig_tol_exp2;
    return mode == Mode::Double ? -52 : 32 - mantissa_bits;
  }

  void validate() const {
    if (mode == Mode::Arbitrary) {
      if (mantissa_bits < 64)
        throw std::invalid_argument("PrecisionConfig: mantissa_bits must be >= 64");
      if (tol_exp() < 1 - mantissa_bits)
        throw std::invalid_argument("PrecisionConfig: eig_tol below 2^(1-mantissa_bits)");
    }
    if (tol_exp() >= 0)
      throw std::invalid_argument("PrecisionConfig: relative tolerance must be < 1");
  }
};

template <class Real>
struct SpectrumT {
  std::vector<Real> values;   // ascending
  std::vector<Real> widths;   // certified bisection interval width per value
  std::vector<std::vector<Real>> vectors;  // optional, unit norm, values order
  Real spectral_width{};      // Gershgorin span used as the relative scale
  int first_index = 0;        // global index of values[0] within the block
};
using Spectrum = SpectrumT<double>;

struct IndexRange {
  int lo = 0;
  int hi = -1;  // -1: all
};

namespace detail {

inline double min(double a, double b) { return a < b ? a : b; }
inline double max(double a, double b) { return a > b ? a : b; }

template <class Real>
struct real_traits;

template <>
struct real_traits<double> {
  static double from_double(double x, const double&) { return x; }
  static double to_double(double x) { return x; }
  static double pow2(int e, const double&) { return std::ldexp(1.0, e); }
  static double fabs(double x) { return std::fabs(x); }
  static double fsqrt(double x) { return std::sqrt(x); }
  static bool finite(double x) { return std::isfinite(x); }
  static double safe_min(const double&) { return std::numeric_limits<double>::min(); }
};

template <>
struct real_traits<BigFloat> {
  static BigFloat from_double(double x, const BigFloat& like) {
    return BigFloat(x, like.precision_bits());
  }
  static double to_double(const BigFloat& x) { return x.to_double(); }
  static BigFloat pow2(int e, const BigFloat& like) {
    return BigFloat::pow2(e, like.precision_bits());
  }
  static BigFloat fabs(const BigFloat& x) { return abs(x); }
  static BigFloat fsqrt(const BigFloat& x) { return sqrt(x); }
  static bool finite(const BigFloat& x) { return x.is_finite(); }
  static BigFloat safe_min(const BigFloat& like) {
    return BigFloat::pow2(-4 * like.precision_bits() - 64, like.precision_bits());
  }
};

template <class Real>
Real entry_scale(const TridiagT<Real>& t) {
  using tr = real_traits<Real>;
  Real s = tr::from_double(1.0, t.diag[0]);
  for (const Real& d : t.diag) s = max(s, tr::fabs(d));
  for (const Real& e : t.offdiag) s = max(s, tr::fabs(e));
  return s;
}

template <class Real>
Real pivot_guard(const TridiagT<Real>& t) {
  using tr = real_traits<Real>;
  Real s = entry_scale(t);
  return tr::safe_min(t.diag[0]) * s * s;
}

// Eigenvalue count strictly below x via the shifted-pivot sign recurrence.
// Pivots in (0, pivmin] are clamped negative, matching the usual guarded form.
template <class Real>
int sturm_count_guarded(const TridiagT<Real>& t, const Real& x, const Real& pivmin) {
  const std::size_t n = t.size();
  int count = 0;
  Real q = t.diag[0] - x;
  if (q <= pivmin) {
    ++count;
    q = min(q, -pivmin);
  }
  for (std::size_t i = 1; i < n; ++i) {
    q = t.diag[i] - x - t.offdiag[i - 1] * t.offdiag[i - 1] / q;
    if (q <= pivmin) {
      ++count;
      q = min(q, -pivmin);
    }
  }
  return count;
}

template <class Real>
std::pair<Real, Real> gershgorin(const TridiagT<Real>& t) {
  using tr = real_traits<Real>;
  const std::size_t n = t.size();
  Real lo = t.diag[0];
  Real hi = t.diag[0];
  for (std::size_t i = 0; i < n; ++i) {
    Real r = tr::from_double(0.0, t.diag[i]);
    if (i > 0) r += tr::fabs(t.offdiag[i - 1]);
    if (i + 1 < n) r += tr::fabs(t.offdiag[i]);
    lo = min(lo, t.diag[i] - r);
    hi = max(hi, t.diag[i] + r);
  }
  return {lo, hi};
}

template <class Real>
void check_entries(const TridiagT<Real>& t) {
  using tr = real_traits<Real>;
  if (t.diag.empty()) throw std::invalid_argument("eigensolver: empty matrix");
  if (t.offdiag.size() + 1 != t.diag.size())
    throw std::invalid_argument("eigensolver: offdiag size must be dim - 1");
  for (const Real& d : t.diag)
    if (!tr::finite(d)) throw Error("eigensolver: non-finite diagonal entry");
  for (const Real& e : t.offdiag)
    if (!tr::finite(e)) throw Error("eigensolver: non-finite off-diagonal entry");
}

template <class Real>
int max_bisect_iters(const PrecisionConfig& prec) {
  return prec.mode == PrecisionConfig::Mode::Double ? 200 : 2 * prec.mantissa_bits + 128;
}

}  // namespace detail

template <class Real>
int sturm_count(const TridiagT<Real>& t, const Real& x) {
  detail::check_entries(t);
  if (!detail::real_traits<Real>::finite(x))
    throw std::invalid_argument("sturm_count: x must be finite");
  return detail::sturm_count_guarded(t, x, detail::pivot_guard(t));
}

// All (or an index range of) eigenvalues by per-index bisection. Each index
// is an independent task; Exec::Parallel distributes them over OpenMP.
template <class Real>
SpectrumT<Real> eig_values(const TridiagT<Real>& t, const PrecisionConfig& prec,
                           Exec exec = Exec::Parallel, IndexRange range = {});

// Inverse iteration with reorthogonalization inside eigenvalue clusters.
// Fills spectrum.vectors; the spectrum must come from eig_values on the
// same matrix.
template <class Real>
void eig_vectors(const TridiagT<Real>& t, SpectrumT<Real>& spectrum,
                 const PrecisionConfig& prec, Exec exec = Exec::Parallel);

extern template SpectrumT<double> eig_values<double>(const TridiagT<double>&,
                                                     const PrecisionConfig&, Exec, IndexRange);
extern template SpectrumT<BigFloat> eig_values<BigFloat>(const TridiagT<BigFloat>&,
                                                         const PrecisionConfig&, Exec, IndexRange);
extern template void eig_vectors<double>(const TridiagT<double>&, SpectrumT<double>&,
                                         const PrecisionConfig&, Exec);
extern template void eig_vectors<BigFloat>(const TridiagT<BigFloat>&, SpectrumT<BigFloat>&,
                                           const PrecisionConfig&, Exec);

}  // namespace esqpt::eig
