#include "esqpt/otoc.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "esqpt/blocks.hpp"

namespace esqpt::otoc {

OtocOp parse_otoc_op(std::string_view s) {
  std::string t(s);
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (t == "identity" || t == "id" || t == "1") return OtocOp::Identity;
  if (t == "jx") return OtocOp::Jx;
  if (t == "d+" || t == "dplus") return OtocOp::Dplus;
  if (t == "d-" || t == "dminus") return OtocOp::Dminus;
  throw std::invalid_argument("unknown correlator operator: " + std::string(s));
}

std::string to_string(OtocOp op) {
  switch (op) {
    case OtocOp::Identity: return "identity";
    case OtocOp::Jx: return "Jx";
    case OtocOp::Dplus: return "D+";
    case OtocOp::Dminus: return "D-";
  }
  return "?";
}

OtocOp adjoint(OtocOp op) {
  switch (op) {
    case OtocOp::Dplus: return OtocOp::Dminus;
    case OtocOp::Dminus: return OtocOp::Dplus;
    default: return op;  // Jx and identity are self-adjoint
  }
}

SectorLabel apply_sector(Model model, OtocOp op, SectorLabel from) {
  switch (op) {
    case OtocOp::Identity:
      return from;
    case OtocOp::Jx:
      if (model != Model::LMG)
        throw std::invalid_argument("Jx correlators require the LMG model");
      return {SectorKind::Parity, 1 - from.value};
    case OtocOp::Dplus:
    case OtocOp::Dminus: {
      if (model != Model::VM2D)
        throw std::invalid_argument("D± correlators require the 2DVM");
      const int shift = op == OtocOp::Dplus ? 1 : -1;
      return {SectorKind::AngMomL, from.value + shift};
    }
  }
  throw std::invalid_argument("unknown correlator operator");
}

SectorSpectrum sector_spectrum(const ModelInstance& inst, SectorLabel label,
                               Exec exec) {
  const auto block = blocks::build_block(inst, label);
  auto tri = block.tridiag();
  auto sp = eig::eig_values(tri, eig::PrecisionConfig::dbl(), exec);
  eig::eig_vectors(tri, sp, eig::PrecisionConfig::dbl(), exec);
  SectorSpectrum out;
  out.instance = inst;
  out.label = label;
  out.quanta = block.quanta;
  out.energies = sp.values;
  const int dim = block.dim();
  out.vectors.resize(dim, dim);
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i) out.vectors(i, k) = sp.vectors[k][i];
  return out;
}

namespace {

struct BandedEntry {
  int row, col;  // to-basis row, from-basis column
  double coeff;
};

int chain_index(const std::vector<int>& quanta, int n) {
  if (quanta.empty() || n < quanta.front() || n > quanta.back()) return -1;
  if ((n - quanta.front()) % 2 != 0) return -1;
  return (n - quanta.front()) / 2;
}

// Banded action of the operator between sector chain bases, from the
// analytic one-boson matrix elements.
std::vector<BandedEntry> banded_action(const ModelInstance& inst, OtocOp op,
                                       const std::vector<int>& from_quanta,
                                       int from_value,
                                       const std::vector<int>& to_quanta) {
  std::vector<BandedEntry> out;
  const int N = inst.N;
  const int l = from_value;  // signed ell for the 2DVM
  for (std::size_t c = 0; c < from_quanta.size(); ++c) {
    const int n = from_quanta[c];
    const auto push = [&](int n_to, double coeff) {
      if (coeff == 0.0) return;
      const int r = chain_index(to_quanta, n_to);
      if (r >= 0) out.push_back({r, static_cast<int>(c), coeff});
    };
    switch (op) {
      case OtocOp::Identity:
        push(n, 1.0);
        break;
      case OtocOp::Jx:
        if (n + 1 <= N)
          push(n + 1, 0.5 * std::sqrt(double(N - n) * (n + 1)));
        if (n - 1 >= 0)
          push(n - 1, 0.5 * std::sqrt(double(N - n + 1) * n));
        break;
      case OtocOp::Dplus:
        if (n + 1 <= N)
          push(n + 1, std::sqrt(double(N - n) * (n + l + 2)));
        if (n - 1 >= 0 && n - l > 0)
          push(n - 1, -std::sqrt(double(N - n + 1) * (n - l)));
        break;
      case OtocOp::Dminus:
        if (n + 1 <= N)
          push(n + 1, -std::sqrt(double(N - n) * (n - l + 2)));
        if (n - 1 >= 0 && n + l > 0)
          push(n - 1, std::sqrt(double(N - n + 1) * (n + l)));
        break;
    }
  }
  return out;
}

}  // namespace

EigenOperator eigen_operator(const SectorSpectrum& to, const SectorSpectrum& from,
                             OtocOp op) {
  if (to.vectors.size() == 0 || from.vectors.size() == 0)
    throw std::invalid_argument("eigen_operator: missing eigenvectors");
  const Model model = from.instance.model;
  if (!(apply_sector(model, op, from.label) == to.label))
    throw std::invalid_argument(
        "eigen_operator: selection rule does not connect these sectors");
  if (op == OtocOp::Identity) {
    // exact in any orthonormal basis; do not round-trip through U^T U
    EigenOperator out;
    out.op = op;
    out.from = from.label;
    out.to = to.label;
    out.entries = Eigen::MatrixXd::Identity(to.vectors.cols(), from.vectors.cols());
    return out;
  }
  const auto banded =
      banded_action(from.instance, op, from.quanta, from.label.value, to.quanta);
  Eigen::MatrixXd bu =
      Eigen::MatrixXd::Zero(to.vectors.rows(), from.vectors.cols());
  for (const auto& e : banded) bu.row(e.row) += e.coeff * from.vectors.row(e.col);
  EigenOperator out;
  out.op = op;
  out.from = from.label;
  out.to = to.label;
  out.entries = to.vectors.transpose() * bu;
  return out;
}

MotocContext motoc_context(const ModelInstance& inst, SectorLabel sector,
                           OtocOp v, OtocOp w, Exec exec) {
  inst.validate();
  const Model model = inst.model;
  const SectorLabel s_j1 = apply_sector(model, w, sector);
  const SectorLabel s_j2 = apply_sector(model, v, s_j1);
  const SectorLabel s_j3 = apply_sector(model, v, sector);

  MotocContext ctx;
  ctx.instance = inst;
  ctx.v_op = v;
  ctx.w_op = w;
  ctx.sec_j = sector_spectrum(inst, sector, exec);
  ctx.sec_j1 = sector == s_j1 ? ctx.sec_j : sector_spectrum(inst, s_j1, exec);
  ctx.sec_j2 = sector == s_j2 ? ctx.sec_j : sector_spectrum(inst, s_j2, exec);
  ctx.sec_j3 = s_j1 == s_j3 ? ctx.sec_j1 : sector_spectrum(inst, s_j3, exec);

  ctx.wd = eigen_operator(ctx.sec_j, ctx.sec_j1, adjoint(w)).entries;
  ctx.vd = eigen_operator(ctx.sec_j1, ctx.sec_j2, adjoint(v)).entries;
  ctx.wm = eigen_operator(ctx.sec_j2, ctx.sec_j3, w).entries;
  ctx.vm = eigen_operator(ctx.sec_j3, ctx.sec_j, v).entries;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto* s : {&ctx.sec_j, &ctx.sec_j1, &ctx.sec_j2, &ctx.sec_j3}) {
    lo = std::min(lo, s->energies.front());
    hi = std::max(hi, s->energies.back());
  }
  const auto gs = sector_spectrum(inst, ground_sector(model), exec);
  ctx.e_gs = std::min(lo, gs.energies.front());
  ctx.spectral_width = std::max(hi - lo, 1e-300);

  const auto& e1 = ctx.sec_j1.energies;
  const auto& e3 = ctx.sec_j3.energies;
  const std::size_t np = e1.size() * e3.size();
  std::vector<double> raw(np);
  for (std::size_t a = 0; a < e1.size(); ++a)
    for (std::size_t b = 0; b < e3.size(); ++b)
      raw[a * e3.size() + b] = e1[a] + e3[b];
  std::vector<int> order(np);
  for (std::size_t i = 0; i < np; ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return raw[a] < raw[b]; });
  ctx.pair_sum.resize(np);
  ctx.pair_j1.resize(np);
  ctx.pair_j3.resize(np);
  for (std::size_t i = 0; i < np; ++i) {
    ctx.pair_sum[i] = raw[order[i]];
    ctx.pair_j1[i] = order[i] / static_cast<int>(e3.size());
    ctx.pair_j3[i] = order[i] % static_cast<int>(e3.size());
  }
  return ctx;
}

MotocResult motoc_stationary(const MotocContext& ctx, int j, double tol_deg) {
  if (!(tol_deg > 0.0))
    throw std::invalid_argument("motoc_stationary: tol_deg must be positive");
  const double tol_abs = tol_deg * ctx.spectral_width;
  const double ej = ctx.sec_j.energies[j];
  const auto& e2 = ctx.sec_j2.energies;

  double value = 0.0;
  for (std::size_t k2 = 0; k2 < e2.size(); ++k2) {
    const double target = ej + e2[k2];
    auto lo = std::lower_bound(ctx.pair_sum.begin(), ctx.pair_sum.end(),
                               target - tol_abs);
    auto hi = std::upper_bound(ctx.pair_sum.begin(), ctx.pair_sum.end(),
                               target + tol_abs);
    for (auto it = lo; it != hi; ++it) {
      const std::size_t idx = static_cast<std::size_t>(it - ctx.pair_sum.begin());
      const int k1 = ctx.pair_j1[idx];
      const int k3 = ctx.pair_j3[idx];
      value += ctx.wd(j, k1) * ctx.vd(k1, k2) * ctx.wm(k2, k3) * ctx.vm(k3, j);
    }
  }
  MotocResult r;
  r.j = j;
  r.energy = ej;
  r.value = value;
  r.abs_value = std::fabs(value);
  r.T = std::numeric_limits<double>::infinity();
  r.tol_deg = tol_deg;
  return r;
}

namespace {

MotocResult finite_T_impl(const MotocContext& ctx, int j, double T) {
  if (!(T > 0.0))
    throw std::invalid_argument("motoc_finite_T: T must be positive");
  const double ej = ctx.sec_j.energies[j];
  const auto& e1 = ctx.sec_j1.energies;
  const auto& e2 = ctx.sec_j2.energies;
  const auto& e3 = ctx.sec_j3.energies;

  const double m_vd = ctx.vd.cwiseAbs().maxCoeff();
  const double m_wm = ctx.wm.cwiseAbs().maxCoeff();
  const double m_vm = ctx.vm.cwiseAbs().maxCoeff();
  const double m_wd = ctx.wd.cwiseAbs().maxCoeff();
  const double cut = m_wd * m_vd * m_wm * m_vm * 1e-20;

  double re = 0.0, im = 0.0;
  for (std::size_t k1 = 0; k1 < e1.size(); ++k1) {
    const double p1 = ctx.wd(j, k1);
    if (std::fabs(p1) * m_vd * m_wm * m_vm < cut) continue;
    for (std::size_t k2 = 0; k2 < e2.size(); ++k2) {
      const double p12 = p1 * ctx.vd(k1, k2);
      if (std::fabs(p12) * m_wm * m_vm < cut) continue;
      const double base = ej + e2[k2] - e1[k1];
      for (std::size_t k3 = 0; k3 < e3.size(); ++k3) {
        const double n = p12 * ctx.wm(k2, k3) * ctx.vm(k3, j);
        if (n == 0.0) continue;
        const double x = (base - e3[k3]) * T;
        // (e^{ix} - 1)/(ix): real part sinc, imaginary part (1-cos)/x
        double kr, ki;
        if (std::fabs(x) < 1e-8) {
          kr = 1.0 - x * x / 6.0;
          ki = 0.5 * x;
        } else {
          kr = std::sin(x) / x;
          ki = (1.0 - std::cos(x)) / x;
        }
        re += n * kr;
        im += n * ki;
      }
    }
  }
  MotocResult r;
  r.j = j;
  r.energy = ej;
  r.value = re;
  r.abs_value = std::hypot(re, im);
  r.T = T;
  r.tol_deg = 0.0;
  return r;
}

}  // namespace

MotocResult motoc_finite_T(const MotocContext& ctx, int j, double T) {
  return finite_T_impl(ctx, j, T);
}

double squared_commutator(const MotocContext& ctx, int j, double t) {
  if (t < 0.0) throw std::invalid_argument("squared_commutator: t must be >= 0");
  using cplx = std::complex<double>;
  const double ej = ctx.sec_j.energies[j];
  const auto& e1 = ctx.sec_j1.energies;
  const auto& e2 = ctx.sec_j2.energies;
  const auto& e3 = ctx.sec_j3.energies;

  // four-point term F(t)
  cplx f = 0.0;
  for (std::size_t k1 = 0; k1 < e1.size(); ++k1)
    for (std::size_t k2 = 0; k2 < e2.size(); ++k2) {
      const double p12 = ctx.wd(j, k1) * ctx.vd(k1, k2);
      if (p12 == 0.0) continue;
      const double base = ej + e2[k2] - e1[k1];
      for (std::size_t k3 = 0; k3 < e3.size(); ++k3) {
        const double n = p12 * ctx.wm(k2, k3) * ctx.vm(k3, j);
        if (n == 0.0) continue;
        const double w = base - e3[k3];
        f += n * std::polar(1.0, w * t);
      }
    }

  // two-point terms
  Eigen::VectorXcd z1(e1.size());
  for (std::size_t b = 0; b < e1.size(); ++b)
    z1(b) = ctx.wd(j, b) * std::polar(1.0, e1[b] * t);
  const Eigen::MatrixXd vvt = ctx.vd * ctx.vd.transpose();
  const double a1 = std::real(z1.dot(vvt * z1));  // dot conjugates the left side

  Eigen::VectorXcd z3(e3.size());
  for (std::size_t b = 0; b < e3.size(); ++b)
    z3(b) = ctx.vm(b, j) * std::polar(1.0, e3[b] * t);
  const Eigen::MatrixXd wtw = ctx.wm.transpose() * ctx.wm;
  const double a2 = std::real(z3.dot(wtw * z3));

  return a1 + a2 - 2.0 * std::real(f);
}

MotocScan motoc_scan(const MotocContext& ctx, double T, double tol_deg,
                     Exec exec) {
  const int nj = static_cast<int>(ctx.sec_j.energies.size());
  MotocScan scan;
  scan.results.resize(nj);
  std::vector<std::string> errors(nj);
  const bool stationary = std::isinf(T);

  // count resonant triples that pairwise near-degeneracy does not explain
  if (stationary) {
    const double tol_abs = tol_deg * ctx.spectral_width;
    const auto& e1 = ctx.sec_j1.energies;
    const auto& e2 = ctx.sec_j2.energies;
    const auto& e3 = ctx.sec_j3.energies;
    long acc = 0;
    for (int j = 0; j < nj; ++j) {
      const double ej = ctx.sec_j.energies[j];
      for (std::size_t k2 = 0; k2 < e2.size(); ++k2) {
        const double target = ej + e2[k2];
        auto lo = std::lower_bound(ctx.pair_sum.begin(), ctx.pair_sum.end(),
                                   target - tol_abs);
        auto hi = std::upper_bound(ctx.pair_sum.begin(), ctx.pair_sum.end(),
                                   target + tol_abs);
        for (auto it = lo; it != hi; ++it) {
          const std::size_t idx =
              static_cast<std::size_t>(it - ctx.pair_sum.begin());
          const double d_a = std::max(std::fabs(ej - e1[ctx.pair_j1[idx]]),
                                      std::fabs(e2[k2] - e3[ctx.pair_j3[idx]]));
          const double d_b = std::max(std::fabs(ej - e3[ctx.pair_j3[idx]]),
                                      std::fabs(e2[k2] - e1[ctx.pair_j1[idx]]));
          if (std::min(d_a, d_b) > 100.0 * tol_abs) ++acc;
        }
      }
    }
    scan.accidental_resonances = acc;
  }

  const auto task = [&](int j) {
    scan.results[j] = stationary ? motoc_stationary(ctx, j, tol_deg)
                                 : motoc_finite_T(ctx, j, T);
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int j = 0; j < nj; ++j) {
      try {
        task(j);
      } catch (const std::exception& e) {
        errors[j] = e.what();
      }
    }
  } else {
    for (int j = 0; j < nj; ++j) {
      try {
        task(j);
      } catch (const std::exception& e) {
        errors[j] = e.what();
      }
    }
  }
  for (int j = 0; j < nj; ++j)
    if (!errors[j].empty())
      throw Error("motoc_scan: state " + std::to_string(j) +
                  " failed: " + errors[j]);
  return scan;
}

}  // namespace esqpt::otoc
