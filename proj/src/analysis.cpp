#include "esqpt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace esqpt::analysis {

namespace {

eig::Spectrum sector_values(const ModelInstance& inst, SectorLabel label,
                            eig::IndexRange range = {}) {
  const auto block = blocks::build_block(inst, label);
  // grid sweeps parallelize over grid points, so the inner solve is serial
  return eig::eig_values(block.tridiag(), eig::PrecisionConfig::dbl(),
                         eig::Exec::Serial, range);
}

}  // namespace

CorrelationDiagram correlation_diagram(Model model, int N,
                                       const std::vector<double>& xi_grid,
                                       const std::vector<SectorLabel>& sectors,
                                       Exec exec) {
  if (!std::is_sorted(xi_grid.begin(), xi_grid.end()))
    throw std::invalid_argument("correlation_diagram: xi_grid must be sorted");
  CorrelationDiagram out;
  out.model = model;
  out.N = N;
  out.xi_grid = xi_grid;
  out.sectors.resize(sectors.size());
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    out.sectors[s].label = sectors[s];
    out.sectors[s].eps.resize(xi_grid.size());
  }

  const SectorLabel gs = ground_sector(model);
  const int g = static_cast<int>(xi_grid.size());
  std::vector<std::string> errors(g);

  const auto point = [&](int i) {
    const ModelInstance inst{model, N, xi_grid[i]};
    std::vector<std::vector<double>> vals(sectors.size());
    double e0 = sector_values(inst, gs, {0, 1}).values[0];
    for (std::size_t s = 0; s < sectors.size(); ++s) {
      vals[s] = sector_values(inst, sectors[s]).values;
      if (!vals[s].empty()) e0 = std::min(e0, vals[s].front());
    }
    for (std::size_t s = 0; s < sectors.size(); ++s) {
      auto& eps = out.sectors[s].eps[i];
      eps.resize(vals[s].size());
      for (std::size_t k = 0; k < vals[s].size(); ++k)
        eps[k] = (vals[s][k] - e0) / N;
    }
  };

  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < g; ++i) {
      try {
        point(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  } else {
    for (int i = 0; i < g; ++i) {
      try {
        point(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  }
  // a failed grid point leaves its row empty; report the first failure
  // without aborting the rest of the sweep
  for (int i = 0; i < g; ++i)
    if (!errors[i].empty())
      throw Error("correlation_diagram: grid point xi=" +
                  std::to_string(xi_grid[i]) + " failed: " + errors[i]);
  return out;
}

std::vector<GapCurve> gap_vs_xi(Model model, int N,
                                const std::vector<PairSpec>& pairs,
                                const std::vector<double>& xi_grid, Exec exec) {
  std::vector<GapCurve> out(pairs.size());
  const int g = static_cast<int>(xi_grid.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    out[p].pair = pairs[p];
    out[p].gap.resize(g);
    out[p].resolution.resize(g);
    out[p].flagged.resize(g);
  }
  std::vector<std::string> errors(g);

  const auto point = [&](int i) {
    const ModelInstance inst{model, N, xi_grid[i]};
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const int k = pairs[p].index;
      const auto sa = sector_values(inst, pairs[p].a, {k, k + 1});
      const auto sb = sector_values(inst, pairs[p].b, {k, k + 1});
      const double gap = std::fabs(sb.values[0] - sa.values[0]);
      const double res = sa.widths[0] + sb.widths[0];
      out[p].resolution[i] = res;
      out[p].flagged[i] = gap < res;
      out[p].gap[i] = out[p].flagged[i] ? std::max(gap, res) : gap;
    }
  };

  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < g; ++i) {
      try {
        point(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  } else {
    for (int i = 0; i < g; ++i) {
      try {
        point(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  }
  for (int i = 0; i < g; ++i)
    if (!errors[i].empty())
      throw Error("gap_vs_xi: grid point failed: " + errors[i]);
  return out;
}

namespace {

GapSample gap_sample_double(Model model, double xi, const PairSpec& pair, int N) {
  const ModelInstance inst{model, N, xi};
  const int k = pair.index;
  const auto sa = sector_values(inst, pair.a, {k, k + 1});
  const auto sb = sector_values(inst, pair.b, {k, k + 1});
  GapSample s;
  s.N = N;
  double gap = std::fabs(sb.values[0] - sa.values[0]);
  const double res = sa.widths[0] + sb.widths[0];
  s.below_resolution = gap < res;
  if (s.below_resolution) gap = std::max(gap, res);
  s.gap = gap;
  s.log_gap = std::log(gap);
  s.resolution_log = std::log(res);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", gap);
  s.gap_str = buf;
  return s;
}

GapSample gap_sample_mp(Model model, double xi, const std::string& xi_decimal,
                        const PairSpec& pair, int N, int start_bits,
                        const eig::PrecisionConfig& base) {
  GapSample s;
  s.N = N;
  int bits = start_bits;
  for (;;) {
    eig::PrecisionConfig prec = base;
    prec.mode = eig::PrecisionConfig::Mode::Arbitrary;
    prec.mantissa_bits = bits;
    if (base.eig_tol_exp2 != 0 && base.eig_tol_exp2 < 1 - bits)
      prec.eig_tol_exp2 = 0;  // fall back to the per-bits default
    const BigFloat xv = xi_decimal.empty()
                            ? BigFloat(xi, bits)
                            : BigFloat::from_string(xi_decimal, bits);
    const ModelInstance inst{model, N, xi};
    const int k = pair.index;
    const auto ba = blocks::build_block_mp(inst, pair.a, xv);
    const auto bb = blocks::build_block_mp(inst, pair.b, xv);
    const auto sa = eig::eig_values(ba.tridiag(), prec, eig::Exec::Serial,
                                    {k, k + 1});
    const auto sb = eig::eig_values(bb.tridiag(), prec, eig::Exec::Serial,
                                    {k, k + 1});
    BigFloat gap = abs(sb.values[0] - sa.values[0]);
    const BigFloat res = sa.widths[0] + sb.widths[0];
    const BigFloat scale = max(sa.spectral_width, sb.spectral_width);
    const BigFloat floor = BigFloat::pow2(16 - bits, bits) * scale;
    if (gap < floor && bits < 4096) {
      bits *= 2;
      continue;  // precision too coarse to certify this gap
    }
    s.mantissa_bits = bits;
    s.below_resolution = gap < res;
    if (s.below_resolution) gap = res;
    s.gap = gap.to_double();
    s.log_gap = gap.log_d();
    s.resolution_log = res.log_d();
    s.gap_str = gap.to_string(40);
    return s;
  }
}

}  // namespace

GapSeries gap_vs_N(Model model, double xi, PairSpec pair,
                   const std::vector<int>& N_list, eig::PrecisionConfig prec,
                   Exec exec, const std::string& xi_decimal) {
  if (!std::is_sorted(N_list.begin(), N_list.end()))
    throw std::invalid_argument("gap_vs_N: N_list must be ascending");
  GapSeries out;
  out.model = model;
  out.xi = xi;
  out.pair = pair;
  out.precision = prec;
  out.samples.resize(N_list.size());
  const int m = static_cast<int>(N_list.size());
  std::vector<std::string> errors(m);

  const auto point = [&](int i) {
    if (prec.mode == eig::PrecisionConfig::Mode::Double)
      out.samples[i] = gap_sample_double(model, xi, pair, N_list[i]);
    else
      out.samples[i] = gap_sample_mp(model, xi, xi_decimal, pair, N_list[i],
                                     prec.mantissa_bits, prec);
  };

  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < m; ++i) {
      try {
        point(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  } else {
    for (int i = 0; i < m; ++i) {
      try {
        point(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw Error("gap_vs_N: " + e);
  return out;
}

FitResult fit_gap(const GapSeries& series, FitForm form) {
  const auto& samples = series.samples;
  if (samples.size() < 4)
    throw std::invalid_argument("fit_gap: need at least 4 samples");
  std::vector<double> x, y;
  for (const auto& s : samples) {
    if (!std::isfinite(s.log_gap))
      throw std::invalid_argument("fit_gap: nonpositive gap in series");
    x.push_back(form == FitForm::Exponential ? double(s.N) : std::log(double(s.N)));
    y.push_back(s.log_gap);
  }
  const std::size_t n = x.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0) throw Error("fit_gap: rank-deficient fit (constant abscissa)");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  FitResult r;
  r.form = form;
  r.b = -slope;
  r.a = std::exp(intercept);
  double ss_res = 0;
  r.residuals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.residuals[i] = y[i] - (intercept + slope * x[i]);
    ss_res += r.residuals[i] * r.residuals[i];
  }
  r.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return r;
}

double condensate_energy(Model model, double xi, double beta) {
  const double kappa = pairing_prefactor(model);
  const double b2 = beta * beta;
  const double u = 1.0 + b2;
  const double w = 1.0 - b2;
  return (1.0 - xi) * b2 / u + xi * kappa * (w * w) / (u * u);
}

double meanfield_critical_energy(Model model, double xi) {
  const double xi_c = critical_coupling(model);
  if (xi < xi_c - 1e-12)
    throw std::invalid_argument(
        "meanfield_critical_energy: xi below the critical coupling (no barrier)");
  // golden-section search for the condensate minimum on beta in [0, 4]
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = 4.0;
  double c = b - gr * (b - a);
  double d = a + gr * (b - a);
  double fc = condensate_energy(model, xi, c);
  double fd = condensate_energy(model, xi, d);
  while (b - a > 1e-12) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = condensate_energy(model, xi, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = condensate_energy(model, xi, d);
    }
  }
  const double e_min = std::min(
      {condensate_energy(model, xi, 0.5 * (a + b)), fc, fd,
       condensate_energy(model, xi, 0.0)});
  return condensate_energy(model, xi, 0.0) - e_min;
}

double density_peak_energy(Model model, double xi, int N, Exec exec) {
  const ModelInstance inst{model, N, xi};
  const auto block = blocks::build_block(inst, ground_sector(model));
  const auto sp =
      eig::eig_values(block.tridiag(), eig::PrecisionConfig::dbl(), exec);
  const int dim = static_cast<int>(sp.values.size());
  if (dim < 8) throw std::invalid_argument("density_peak_energy: block too small");
  std::vector<double> eps(dim);
  for (int i = 0; i < dim; ++i) eps[i] = (sp.values[i] - sp.values[0]) / N;
  std::vector<double> rho(dim - 1);
  for (int i = 0; i + 1 < dim; ++i)
    rho[i] = 1.0 / std::max(eps[i + 1] - eps[i], 1e-300);
  // 5-point median smoothing keeps near-degenerate doublets from spiking
  std::vector<double> window;
  int best = 2;
  double best_val = -1.0;
  for (int i = 2; i + 2 < static_cast<int>(rho.size()); ++i) {
    window.assign(rho.begin() + i - 2, rho.begin() + i + 3);
    std::nth_element(window.begin(), window.begin() + 2, window.end());
    if (window[2] > best_val) {
      best_val = window[2];
      best = i;
    }
  }
  return 0.5 * (eps[best] + eps[best + 1]);
}

double extrapolated_critical_energy(Model model, double xi,
                                    const std::vector<int>& N_list, Exec exec) {
  if (N_list.size() < 2)
    throw std::invalid_argument("extrapolated_critical_energy: need >= 2 sizes");
  std::vector<double> x, y;
  for (int N : N_list) {
    x.push_back(1.0 / N);
    y.push_back(density_peak_energy(model, xi, N, exec));
  }
  // least-squares polynomial in 1/N (quadratic when 3+ points), value at 0
  const int terms = N_list.size() >= 3 ? 3 : 2;
  std::vector<std::vector<double>> a(terms, std::vector<double>(terms, 0.0));
  std::vector<double> rhs(terms, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<double> p(terms, 1.0);
    for (int t = 1; t < terms; ++t) p[t] = p[t - 1] * x[i];
    for (int r = 0; r < terms; ++r) {
      rhs[r] += p[r] * y[i];
      for (int c = 0; c < terms; ++c) a[r][c] += p[r] * p[c];
    }
  }
  // Gaussian elimination on the tiny normal system
  for (int col = 0; col < terms; ++col) {
    int piv = col;
    for (int r = col + 1; r < terms; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (int r = col + 1; r < terms; ++r) {
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < terms; ++c) a[r][c] -= f * a[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<double> coef(terms, 0.0);
  for (int r = terms - 1; r >= 0; --r) {
    double acc = rhs[r];
    for (int c = r + 1; c < terms; ++c) acc -= a[r][c] * coef[c];
    coef[r] = acc / a[r][r];
  }
  return coef[0];
}

std::vector<CentrifugalCurve> centrifugal_scan(int N,
                                               const std::vector<int>& ells,
                                               const std::vector<double>& xi_grid,
                                               Exec exec) {
  for (int l : ells)
    if (l < 1 || l > N)
      throw std::invalid_argument("centrifugal_scan: ell must lie in [1, N]");
  std::vector<CentrifugalCurve> out(ells.size());
  const int g = static_cast<int>(xi_grid.size());
  for (std::size_t k = 0; k < ells.size(); ++k) {
    out[k].ell = ells[k];
    out[k].scaled_gap.resize(g);
  }
  std::vector<std::string> errors(g);

  const auto point = [&](int i) {
    const ModelInstance inst{Model::VM2D, N, xi_grid[i]};
    const double e0 =
        sector_values(inst, ground_sector(Model::VM2D), {0, 1}).values[0];
    for (std::size_t k = 0; k < ells.size(); ++k) {
      const SectorLabel label{SectorKind::AngMomL, ells[k]};
      const double head = sector_values(inst, label, {0, 1}).values[0];
      out[k].scaled_gap[i] = (head - e0) / ells[k];
    }
  };

  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < g; ++i) {
      try {
        point(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  } else {
    for (int i = 0; i < g; ++i) {
      try {
        point(i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw Error("centrifugal_scan: " + e);
  return out;
}

}  // namespace esqpt::analysis
