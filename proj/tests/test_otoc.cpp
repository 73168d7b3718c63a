#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "esqpt/fock.hpp"
#include "esqpt/otoc.hpp"

using namespace esqpt;
using otoc::OtocOp;

namespace {

const SectorLabel kEven{SectorKind::Parity, 0};
const SectorLabel kOdd{SectorKind::Parity, 1};
const SectorLabel kL0{SectorKind::AngMomL, 0};

// Brute-force reference: the full Fock space transformed to the dense
// eigenbasis, with the four-point sum taken over every triple.
struct DenseRef {
  std::vector<double> energies;
  std::vector<int> labels;
  Eigen::MatrixXd vt, wt;
  double width = 0.0;
};

DenseRef dense_setup(Model m, int N, double xi, fock::OpId vop, fock::OpId wop) {
  const auto basis = fock::build_basis(m, N);
  const auto ls = fock::conserved_expectations(basis, xi);
  DenseRef d;
  d.energies = ls.energies;
  d.labels = ls.labels;
  d.vt = ls.vectors.transpose() * fock::operator_matrix(basis, vop) * ls.vectors;
  d.wt = ls.vectors.transpose() * fock::operator_matrix(basis, wop) * ls.vectors;
  d.width = ls.energies.back() - ls.energies.front();
  return d;
}

int dense_state_index(const DenseRef& d, int sector_value, int k) {
  int seen = 0;
  for (std::size_t i = 0; i < d.labels.size(); ++i)
    if (d.labels[i] == sector_value && seen++ == k) return static_cast<int>(i);
  return -1;
}

double dense_stationary(const DenseRef& d, int jf, double tol_abs) {
  const int dim = static_cast<int>(d.energies.size());
  double val = 0.0;
  for (int j1 = 0; j1 < dim; ++j1)
    for (int j2 = 0; j2 < dim; ++j2)
      for (int j3 = 0; j3 < dim; ++j3) {
        const double w =
            d.energies[jf] + d.energies[j2] - d.energies[j1] - d.energies[j3];
        if (std::fabs(w) > tol_abs) continue;
        val += d.wt(j1, jf) * d.vt(j2, j1) * d.wt(j2, j3) * d.vt(j3, jf);
      }
  return val;
}

std::complex<double> dense_finite_T(const DenseRef& d, int jf, double T) {
  const int dim = static_cast<int>(d.energies.size());
  std::complex<double> val = 0.0;
  for (int j1 = 0; j1 < dim; ++j1)
    for (int j2 = 0; j2 < dim; ++j2)
      for (int j3 = 0; j3 < dim; ++j3) {
        const double n =
            d.wt(j1, jf) * d.vt(j2, j1) * d.wt(j2, j3) * d.vt(j3, jf);
        if (n == 0.0) continue;
        const double x =
            (d.energies[jf] + d.energies[j2] - d.energies[j1] - d.energies[j3]) * T;
        double kr, ki;
        if (std::fabs(x) < 1e-8) {
          kr = 1.0 - x * x / 6.0;
          ki = 0.5 * x;
        } else {
          kr = std::sin(x) / x;
          ki = (1.0 - std::cos(x)) / x;
        }
        val += n * std::complex<double>(kr, ki);
      }
  return val;
}

}  // namespace

TEST_CASE("eigen operators at the decoupled point reproduce chain elements") {
  const ModelInstance inst{Model::LMG, 2, 0.0};
  const auto even = otoc::sector_spectrum(inst, kEven);
  const auto odd = otoc::sector_spectrum(inst, kOdd);
  const auto x = otoc::eigen_operator(odd, even, OtocOp::Jx);
  REQUIRE(x.entries.rows() == 1);
  REQUIRE(x.entries.cols() == 2);
  const double h = std::sqrt(2.0) / 2.0;
  CHECK(x.entries(0, 0) == doctest::Approx(h).epsilon(1e-12));
  CHECK(x.entries(0, 1) == doctest::Approx(h).epsilon(1e-12));
}

TEST_CASE("identity eigen operator is the Kronecker delta") {
  const ModelInstance inst{Model::LMG, 9, 0.44};
  const auto even = otoc::sector_spectrum(inst, kEven);
  const auto id = otoc::eigen_operator(even, even, OtocOp::Identity);
  const Eigen::MatrixXd expect =
      Eigen::MatrixXd::Identity(id.entries.rows(), id.entries.cols());
  CHECK((id.entries - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("D+ between eigenbases of adjacent ell sectors") {
  const ModelInstance inst{Model::VM2D, 2, 0.0};
  const auto l1 = otoc::sector_spectrum(inst, {SectorKind::AngMomL, 1});
  const auto l2 = otoc::sector_spectrum(inst, {SectorKind::AngMomL, 2});
  const auto dp = otoc::eigen_operator(l2, l1, OtocOp::Dplus);
  REQUIRE(dp.entries.rows() == 1);
  REQUIRE(dp.entries.cols() == 1);
  CHECK(dp.entries(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("selection rules are enforced structurally") {
  const ModelInstance inst{Model::LMG, 4, 0.3};
  const auto even = otoc::sector_spectrum(inst, kEven);
  CHECK_THROWS(otoc::eigen_operator(even, even, OtocOp::Jx));
  CHECK_THROWS(otoc::apply_sector(Model::LMG, OtocOp::Dplus, kEven));

  const auto ctx = otoc::motoc_context(inst, kEven, OtocOp::Jx, OtocOp::Jx);
  CHECK(ctx.sec_j.label == kEven);
  CHECK(ctx.sec_j1.label == kOdd);
  CHECK(ctx.sec_j2.label == kEven);
  CHECK(ctx.sec_j3.label == kOdd);
}

TEST_CASE("ground-state stationary value of the decoupled LMG chain") {
  const auto ctx = otoc::motoc_context({Model::LMG, 2, 0.0}, kEven, OtocOp::Jx,
                                       OtocOp::Jx);
  const auto r = otoc::motoc_stationary(ctx, 0, 1e-10);
  // single resonant triple with product (sqrt(2)/2)^4
  CHECK(r.value == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS(otoc::motoc_stationary(ctx, 0, 0.0));
}

TEST_CASE("identity operators normalize to one exactly") {
  const auto ctx = otoc::motoc_context({Model::LMG, 6, 0.37}, kEven,
                                       OtocOp::Identity, OtocOp::Identity);
  for (int j = 0; j < 4; ++j) {
    CHECK(otoc::motoc_stationary(ctx, j, 1e-10).value == 1.0);
    CHECK(otoc::motoc_finite_T(ctx, j, 1000.0).value == 1.0);
  }
}

TEST_CASE("stationary and finite-T averages match the dense brute force") {
  struct Case {
    Model model;
    int N;
    double xi;
  };
  const Case cases[] = {{Model::LMG, 2, 0.0},  {Model::LMG, 4, 0.37},
                        {Model::LMG, 6, 0.37}, {Model::VM2D, 2, 0.0},
                        {Model::VM2D, 4, 0.37}, {Model::VM2D, 6, 0.37}};
  for (const auto& c : cases) {
    CAPTURE(to_string(c.model));
    CAPTURE(c.N);
    CAPTURE(c.xi);
    const bool lmg = c.model == Model::LMG;
    const SectorLabel sector = lmg ? kEven : kL0;
    const auto v_op = lmg ? OtocOp::Jx : OtocOp::Dminus;
    const auto w_op = lmg ? OtocOp::Jx : OtocOp::Dplus;
    const auto ctx = otoc::motoc_context({c.model, c.N, c.xi}, sector, v_op, w_op);
    const auto ref = dense_setup(c.model, c.N, c.xi,
                                 lmg ? fock::OpId::Jx : fock::OpId::Dminus,
                                 lmg ? fock::OpId::Jx : fock::OpId::Dplus);
    const double tol_deg = 1e-10;
    const double tol_abs = tol_deg * ctx.spectral_width;
    const int nj = static_cast<int>(ctx.sec_j.energies.size());
    for (int k = 0; k < nj; ++k) {
      const int jf = dense_state_index(ref, sector.value, k);
      REQUIRE(jf >= 0);
      REQUIRE(std::fabs(ref.energies[jf] - ctx.sec_j.energies[k]) < 1e-9);
      const auto st = otoc::motoc_stationary(ctx, k, tol_deg);
      CHECK(std::fabs(st.value - dense_stationary(ref, jf, tol_abs)) < 1e-10);
      const auto ft = otoc::motoc_finite_T(ctx, k, 7.3);
      const auto dft = dense_finite_T(ref, jf, 7.3);
      CHECK(std::fabs(ft.value - dft.real()) < 1e-10);
      CHECK(std::fabs(ft.abs_value - std::abs(dft)) < 1e-10);
    }
  }
}

TEST_CASE("finite-T averages converge at the kernel rate") {
  const auto ctx =
      otoc::motoc_context({Model::LMG, 60, 0.5}, kEven, OtocOp::Jx, OtocOp::Jx);
  const double tol_deg = 1e-10;
  const double tol_abs = tol_deg * ctx.spectral_width;
  const int j = 5;
  const double T = 50.0;
  const auto stat = otoc::motoc_stationary(ctx, j, tol_deg);
  const auto fin = otoc::motoc_finite_T(ctx, j, T);

  // bound: sum of |N| over off-resonant triples, scaled by 2/(w_min T)
  const double ej = ctx.sec_j.energies[j];
  double off_sum = 0.0, w_min = std::numeric_limits<double>::infinity();
  for (int k1 = 0; k1 < ctx.wd.cols(); ++k1)
    for (int k2 = 0; k2 < ctx.vd.cols(); ++k2)
      for (int k3 = 0; k3 < ctx.wm.cols(); ++k3) {
        const double w = ej + ctx.sec_j2.energies[k2] -
                         ctx.sec_j1.energies[k1] - ctx.sec_j3.energies[k3];
        const double n = ctx.wd(j, k1) * ctx.vd(k1, k2) * ctx.wm(k2, k3) *
                         ctx.vm(k3, j);
        if (std::fabs(w) <= tol_abs) continue;
        off_sum += std::fabs(n);
        w_min = std::min(w_min, std::fabs(w));
      }
  const double bound = 2.0 / (w_min * T) * off_sum;
  CHECK(std::fabs(fin.value - stat.value) <= bound * (1.0 + 1e-9) + 1e-12);
}

TEST_CASE("integer spectra make the finite average land exactly on the limit") {
  // at xi=0 every frequency is an integer, so averaging over 2*pi*k washes
  // out all off-resonant phases and the kernel arithmetic leaves no
  // imaginary residue
  const auto ctx =
      otoc::motoc_context({Model::LMG, 6, 0.0}, kEven, OtocOp::Jx, OtocOp::Jx);
  const double T = 2.0 * std::numbers::pi * 64;
  for (int j = 0; j < 3; ++j) {
    const auto stat = otoc::motoc_stationary(ctx, j, 1e-10);
    const auto fin = otoc::motoc_finite_T(ctx, j, T);
    CHECK(std::fabs(fin.value - stat.value) < 1e-12);
    const double imag = std::sqrt(std::max(
        0.0, fin.abs_value * fin.abs_value - fin.value * fin.value));
    CHECK(imag < 1e-14 * std::max(1.0, std::fabs(fin.value)));
  }
}

TEST_CASE("squared commutator baselines") {
  SUBCASE("identity operators commute for all times") {
    const auto ctx = otoc::motoc_context({Model::LMG, 5, 0.37}, kEven,
                                         OtocOp::Identity, OtocOp::Identity);
    for (double t : {0.0, 0.5, 3.0})
      CHECK(std::fabs(otoc::squared_commutator(ctx, 1, t)) < 1e-12);
  }
  SUBCASE("an operator commutes with itself at t=0") {
    const auto ctx = otoc::motoc_context({Model::LMG, 6, 0.37}, kEven,
                                         OtocOp::Jx, OtocOp::Jx);
    for (int j : {0, 2})
      CHECK(std::fabs(otoc::squared_commutator(ctx, j, 0.0)) < 1e-10);
  }
  SUBCASE("integer spectrum gives a 2*pi-periodic commutator") {
    const auto ctx = otoc::motoc_context({Model::LMG, 2, 0.0}, kEven,
                                         OtocOp::Jx, OtocOp::Jx);
    const double c1 = otoc::squared_commutator(ctx, 0, 0.7);
    const double c2 = otoc::squared_commutator(ctx, 0, 0.7 + 2.0 * std::numbers::pi);
    CHECK(c1 == doctest::Approx(c2).epsilon(1e-10));
    CHECK(c1 > 1e-3);  // genuinely nonzero away from t=0
    CHECK_THROWS(otoc::squared_commutator(ctx, 0, -1.0));
  }
}

TEST_CASE("scans aggregate per-state results deterministically") {
  const auto ctx =
      otoc::motoc_context({Model::LMG, 40, 0.6}, kEven, OtocOp::Jx, OtocOp::Jx);
  const double inf = std::numeric_limits<double>::infinity();
  const auto scan = otoc::motoc_scan(ctx, inf, 1e-10);
  REQUIRE(scan.results.size() == ctx.sec_j.energies.size());
  for (std::size_t j = 1; j < scan.results.size(); ++j)
    CHECK(scan.results[j].energy >= scan.results[j - 1].energy);
  // no accidental cross-sector resonances in this model
  CHECK(scan.accidental_resonances == 0);

  const auto serial = otoc::motoc_scan(ctx, inf, 1e-10, eig::Exec::Serial);
  for (std::size_t j = 0; j < scan.results.size(); ++j)
    CHECK(scan.results[j].value == serial.results[j].value);
}
