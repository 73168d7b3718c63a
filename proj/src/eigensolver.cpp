#include "esqpt/eigensolver.hpp"

#include <omp.h>

#include <sstream>

namespace esqpt::eig {

namespace detail {

template <class Real>
struct BisectSetup {
  Real lo, hi;       // bracket containing the whole spectrum
  Real scale;        // relative scale (span or largest bound magnitude)
  Real tol_abs;      // certified target width
  Real pivmin;
  int maxit;
};

template <class Real>
BisectSetup<Real> setup(const TridiagT<Real>& t, const PrecisionConfig& prec) {
  using tr = real_traits<Real>;
  auto [lo, hi] = gershgorin(t);
  Real span = hi - lo;
  Real scale = max(span, max(tr::fabs(lo), tr::fabs(hi)));
  const Real one = tr::from_double(1.0, t.diag[0]);
  if (!(scale > tr::from_double(0.0, t.diag[0]))) scale = one;
  const Real tol_abs = tr::pow2(prec.tol_exp(), scale) * scale;
  const Real pad = tol_abs * 4.0;
  return BisectSetup<Real>{lo - pad, hi + pad, scale, tol_abs,
                           pivot_guard(t), max_bisect_iters<Real>(prec)};
}

// Locates the k-th eigenvalue (ascending, 0-based): the point where the
// Sturm count crosses k -> k+1.
template <class Real>
void bisect_index(const TridiagT<Real>& t, int k, const BisectSetup<Real>& s,
                  Real& value, Real& width) {
  Real lo = s.lo;
  Real hi = s.hi;
  for (int it = 0; it < s.maxit && (hi - lo) > s.tol_abs; ++it) {
    Real mid = lo + (hi - lo) / 2;
    if (!(mid > lo) || !(mid < hi)) break;  // interval no longer splittable
    if (sturm_count_guarded(t, mid, s.pivmin) <= k)
      lo = mid;
    else
      hi = mid;
  }
  width = hi - lo;
  if (width > s.tol_abs * 4.0) {
    std::ostringstream msg;
    msg << "eig_values: bisection for index " << k
        << " stalled on an interval of width "
        << real_traits<Real>::to_double(width) << " around "
        << real_traits<Real>::to_double(lo);
    throw Error(msg.str());
  }
  value = lo + (hi - lo) / 2;
}

// Solves (T - sigma) x = b by Gaussian elimination with partial pivoting;
// pivots smaller than pivmin are clamped, which is the behaviour inverse
// iteration wants at a converged shift.
template <class Real>
void shifted_solve(const TridiagT<Real>& t, const Real& sigma,
                   std::vector<Real>& b, const Real& pivmin) {
  using tr = real_traits<Real>;
  const std::size_t n = t.size();
  const Real zero = tr::from_double(0.0, sigma);
  if (n == 1) {
    Real d0 = t.diag[0] - sigma;
    if (tr::fabs(d0) < pivmin) d0 = d0 < zero ? -pivmin : pivmin;
    b[0] = b[0] / d0;
    return;
  }
  std::vector<Real> dd(n), du(n > 1 ? n - 1 : 0), du2(n > 2 ? n - 2 : 0), dl(n - 1);
  for (std::size_t i = 0; i < n; ++i) dd[i] = t.diag[i] - sigma;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    du[i] = t.offdiag[i];
    dl[i] = t.offdiag[i];
  }
  for (std::size_t i = 0; i + 2 < n; ++i) du2[i] = zero;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (tr::fabs(dd[i]) >= tr::fabs(dl[i])) {
      if (tr::fabs(dd[i]) < pivmin) dd[i] = dd[i] < zero ? -pivmin : pivmin;
      const Real fact = dl[i] / dd[i];
      dd[i + 1] = dd[i + 1] - fact * du[i];
      b[i + 1] = b[i + 1] - fact * b[i];
      dl[i] = zero;  // reused as the second superdiagonal: none here
    } else {
      const Real fact = dd[i] / dl[i];
      dd[i] = dl[i];
      const Real tmp = dd[i + 1];
      dd[i + 1] = du[i] - fact * tmp;
      if (i + 2 < n) {
        dl[i] = du[i + 1];  // fill-in
        du[i + 1] = -fact * dl[i];
      } else {
        dl[i] = zero;
      }
      du[i] = tmp;
      const Real bt = b[i];
      b[i] = b[i + 1];
      b[i + 1] = bt - fact * b[i + 1];
    }
  }
  if (tr::fabs(dd[n - 1]) < pivmin)
    dd[n - 1] = dd[n - 1] < zero ? -pivmin : pivmin;

  b[n - 1] = b[n - 1] / dd[n - 1];
  if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / dd[n - 2];
  for (std::size_t ii = n - 2; ii-- > 0;) {
    Real acc = b[ii] - du[ii] * b[ii + 1];
    if (ii + 2 < n) acc = acc - dl[ii] * b[ii + 2];
    b[ii] = acc / dd[ii];
  }
}

template <class Real>
Real norm2(const std::vector<Real>& x) {
  using tr = real_traits<Real>;
  Real s = tr::from_double(0.0, x[0]);
  for (const Real& v : x) s += v * v;
  return tr::fsqrt(s);
}

template <class Real>
Real dot(const std::vector<Real>& a, const std::vector<Real>& b) {
  using tr = real_traits<Real>;
  Real s = tr::from_double(0.0, a[0]);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class Real>
Real residual_inf(const TridiagT<Real>& t, const std::vector<Real>& v, const Real& lambda) {
  using tr = real_traits<Real>;
  const std::size_t n = t.size();
  Real r = tr::from_double(0.0, lambda);
  for (std::size_t i = 0; i < n; ++i) {
    Real y = (t.diag[i] - lambda) * v[i];
    if (i > 0) y += t.offdiag[i - 1] * v[i - 1];
    if (i + 1 < n) y += t.offdiag[i] * v[i + 1];
    r = max(r, tr::fabs(y));
  }
  return r;
}

// One cluster of near-degenerate eigenvalues: inverse iteration per member
// with progressive orthogonalization. Retries with perturbed shift and a
// different start vector when the iterate collapses onto earlier members.
template <class Real>
void vectors_for_cluster(const TridiagT<Real>& t, SpectrumT<Real>& sp,
                         std::size_t c_lo, std::size_t c_hi,
                         const BisectSetup<Real>& s) {
  using tr = real_traits<Real>;
  const std::size_t n = t.size();
  const Real zero = tr::from_double(0.0, s.scale);
  const Real ortho_cut = tr::from_double(1e-8, s.scale);

  for (std::size_t k = c_lo; k < c_hi; ++k) {
    bool accepted = false;
    std::string last_issue;
    for (int attempt = 0; attempt < 3 && !accepted; ++attempt) {
      Real shift = sp.values[k];
      if (attempt > 0)
        shift += s.tol_abs * tr::from_double(16.0 * attempt * double(k - c_lo + 1), s.scale);

      std::vector<Real> x(n);
      for (std::size_t i = 0; i < n; ++i) {
        double seed = 1.0;
        if (attempt == 1) seed = (i % 2 == 0) ? 1.0 : -1.0;
        if (attempt == 2) seed = (i == (k % n)) ? 1.0 : 0.0;
        x[i] = tr::from_double(seed, s.scale);
      }

      bool collapsed = false;
      for (int iter = 0; iter < 3 && !collapsed; ++iter) {
        shifted_solve(t, shift, x, s.pivmin);
        // orthogonalize against already-accepted cluster members
        for (std::size_t j = c_lo; j < k; ++j) {
          const Real p = dot(x, sp.vectors[j]);
          for (std::size_t i = 0; i < n; ++i) x[i] -= p * sp.vectors[j][i];
        }
        const Real nrm = norm2(x);
        if (!(nrm > zero)) {
          collapsed = true;
          break;
        }
        for (std::size_t i = 0; i < n; ++i) x[i] = x[i] / nrm;
      }
      if (collapsed) {
        last_issue = "iterate collapsed after orthogonalization";
        continue;
      }
      Real worst = zero;
      for (std::size_t j = c_lo; j < k; ++j)
        worst = max(worst, tr::fabs(dot(x, sp.vectors[j])));
      if (worst > ortho_cut) {
        last_issue = "loss of orthogonality inside cluster";
        continue;
      }
      sp.vectors[k] = std::move(x);
      accepted = true;
    }
    if (!accepted)
      throw Error("eig_vectors: inverse iteration failed after 3 attempts (" +
                  last_issue + ")");
  }
}

}  // namespace detail

template <class Real>
SpectrumT<Real> eig_values(const TridiagT<Real>& t, const PrecisionConfig& prec,
                           Exec exec, IndexRange range) {
  using tr = detail::real_traits<Real>;
  prec.validate();
  detail::check_entries(t);
  const int n = static_cast<int>(t.size());
  int lo = range.lo;
  int hi = range.hi < 0 ? n : range.hi;
  if (lo < 0 || hi > n || lo >= hi)
    throw std::invalid_argument("eig_values: bad index range");

  const auto s = detail::setup(t, prec);
  SpectrumT<Real> sp;
  sp.first_index = lo;
  sp.spectral_width = s.scale;
  const int m = hi - lo;
  sp.values.assign(m, tr::from_double(0.0, s.scale));
  sp.widths.assign(m, tr::from_double(0.0, s.scale));

  std::vector<std::string> errors(m);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < m; ++i) {
      try {
        detail::bisect_index(t, lo + i, s, sp.values[i], sp.widths[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  } else {
    for (int i = 0; i < m; ++i) {
      try {
        detail::bisect_index(t, lo + i, s, sp.values[i], sp.widths[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw Error(e);
  return sp;
}

template <class Real>
void eig_vectors(const TridiagT<Real>& t, SpectrumT<Real>& spectrum,
                 const PrecisionConfig& prec, Exec exec) {
  using tr = detail::real_traits<Real>;
  prec.validate();
  detail::check_entries(t);
  const std::size_t m = spectrum.values.size();
  if (m == 0) return;
  const auto s = detail::setup(t, prec);
  spectrum.vectors.assign(m, {});

  // cluster tolerance per the vectors contract
  const Real cluster_tol = s.tol_abs * tr::from_double(1e3, s.scale);
  std::vector<std::pair<std::size_t, std::size_t>> clusters;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= m; ++i) {
    if (i == m || spectrum.values[i] - spectrum.values[i - 1] > cluster_tol) {
      clusters.emplace_back(start, i);
      start = i;
    }
  }

  const int nc = static_cast<int>(clusters.size());
  std::vector<std::string> errors(nc);
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int c = 0; c < nc; ++c) {
      try {
        detail::vectors_for_cluster(t, spectrum, clusters[c].first, clusters[c].second, s);
      } catch (const std::exception& e) {
        errors[c] = e.what();
      }
    }
  } else {
    for (int c = 0; c < nc; ++c) {
      try {
        detail::vectors_for_cluster(t, spectrum, clusters[c].first, clusters[c].second, s);
      } catch (const std::exception& e) {
        errors[c] = e.what();
      }
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw Error(e);
}

template SpectrumT<double> eig_values<double>(const TridiagT<double>&,
                                              const PrecisionConfig&, Exec, IndexRange);
template SpectrumT<BigFloat> eig_values<BigFloat>(const TridiagT<BigFloat>&,
                                                  const PrecisionConfig&, Exec, IndexRange);
template void eig_vectors<double>(const TridiagT<double>&, SpectrumT<double>&,
                                  const PrecisionConfig&, Exec);
template void eig_vectors<BigFloat>(const TridiagT<BigFloat>&, SpectrumT<BigFloat>&,
                                    const PrecisionConfig&, Exec);

}  // namespace esqpt::eig
