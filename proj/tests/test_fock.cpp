#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "esqpt/fock.hpp"

using namespace esqpt;
using fock::OpId;

TEST_CASE("basis dimensions follow the weak-composition count") {
  for (Model m : {Model::LMG, Model::VM2D, Model::VM3D, Model::IBM})
    for (int N = 1; N <= 10; ++N)
      CHECK(fock::build_basis(m, N).dim() == full_dimension(m, N));

  // hand counts
  CHECK(fock::build_basis(Model::LMG, 2).dim() == 3);
  CHECK(fock::build_basis(Model::VM2D, 1).dim() == 3);
  CHECK(fock::build_basis(Model::IBM, 2).dim() == 21);
  CHECK_THROWS(fock::build_basis(Model::LMG, 0));
}

TEST_CASE("LMG basis order walks up the t-boson ladder") {
  const auto b = fock::build_basis(Model::LMG, 2);
  CHECK(b.states[0] == std::vector<int>{2, 0});
  CHECK(b.states[1] == std::vector<int>{1, 1});
  CHECK(b.states[2] == std::vector<int>{0, 2});
}

TEST_CASE("Jx on the N=2 chain") {
  const auto b = fock::build_basis(Model::LMG, 2);
  const auto jx = fock::operator_matrix(b, OpId::Jx);
  const double h = std::sqrt(2.0) / 2.0;
  CHECK(jx(0, 0) == 0.0);
  CHECK(jx(1, 1) == 0.0);
  CHECK(jx(2, 2) == 0.0);
  CHECK(jx(1, 0) == doctest::Approx(h).epsilon(1e-15));
  CHECK(jx(2, 1) == doctest::Approx(h).epsilon(1e-15));
  CHECK(jx(2, 0) == 0.0);
}

TEST_CASE("ell counts the circular imbalance") {
  const auto b = fock::build_basis(Model::VM2D, 2);
  const auto l = fock::operator_matrix(b, OpId::Ell);
  for (int i = 0; i < b.dim(); ++i) {
    CHECK(l(i, i) == b.states[i][1] - b.states[i][2]);
    for (int j = 0; j < b.dim(); ++j)
      if (i != j) CHECK(l(i, j) == 0.0);
  }
}

TEST_CASE("D+ raises n and ell together") {
  const auto b = fock::build_basis(Model::VM2D, 2);
  const auto dp = fock::operator_matrix(b, OpId::Dplus);
  // |n=1, l=1> = (1,1,0); |n=2, l=2> = (0,2,0)
  const int from = b.lookup({1, 1, 0});
  const int to = b.lookup({0, 2, 0});
  REQUIRE(from >= 0);
  REQUIRE(to >= 0);
  CHECK(dp(to, from) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("operator ids are tied to their model") {
  const auto b = fock::build_basis(Model::VM2D, 2);
  CHECK_THROWS(fock::operator_matrix(b, OpId::Jx));
  const auto lmg = fock::build_basis(Model::LMG, 2);
  CHECK_THROWS(fock::operator_matrix(lmg, OpId::Dplus));
  CHECK_THROWS(fock::operator_matrix(lmg, OpId::So5Casimir));
}

TEST_CASE("hamiltonian endpoints") {
  const auto b = fock::build_basis(Model::LMG, 2);
  SUBCASE("xi = 0 counts t bosons") {
    const auto h = fock::full_hamiltonian(b, 0.0);
    for (int i = 0; i < 3; ++i) CHECK(h(i, i) == doctest::Approx(i));
    CHECK(h(1, 0) == 0.0);
  }
  SUBCASE("xi = 1 eigenvalues {0, 0, 2}") {
    const auto ev = fock::oracle_spectrum(b, 1.0);
    CHECK(ev[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::fabs(ev[1]) < 1e-12);
    CHECK(ev[2] == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("xi out of range is rejected") {
    CHECK_THROWS(fock::full_hamiltonian(b, -0.1));
    CHECK_THROWS(fock::full_hamiltonian(b, 1.1));
  }
}

TEST_CASE("dense spectrum of the LMG at N=2, xi=0.5") {
  const auto b = fock::build_basis(Model::LMG, 2);
  const auto ev = fock::oracle_spectrum(b, 0.5);
  // even block [[0.5, -0.5], [-0.5, 1.5]] plus the odd singleton at 0.5
  CHECK(ev[0] == doctest::Approx(1.0 - std::sqrt(0.5)).epsilon(1e-13));
  CHECK(ev[1] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(ev[2] == doctest::Approx(1.0 + std::sqrt(0.5)).epsilon(1e-13));
}

TEST_CASE("2DVM pairing spectrum at N=2, xi=1 contains the {0, 3} l=0 pair") {
  const auto b = fock::build_basis(Model::VM2D, 2);
  const auto ev = fock::oracle_spectrum(b, 1.0);
  CHECK(ev.front() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ev.back() == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("the dense guard rejects oversized bases") {
  const auto b = fock::build_basis(Model::LMG, 5001);
  CHECK_THROWS(fock::oracle_spectrum(b, 0.5));
}

TEST_CASE("conserved labels") {
  SUBCASE("LMG N=2, xi=0.5: parities +1, -1, +1 by energy order") {
    const auto ls = fock::conserved_expectations(
        fock::build_basis(Model::LMG, 2), 0.5);
    CHECK(ls.conserved[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(ls.conserved[1] == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(ls.conserved[2] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(ls.labels == std::vector<int>{0, 1, 0});
  }
  SUBCASE("VM2D N=1: ell labels 0, +1, -1") {
    const auto ls = fock::conserved_expectations(
        fock::build_basis(Model::VM2D, 1), 0.3);
    CHECK(ls.labels == std::vector<int>{0, 1, -1});
  }
  SUBCASE("LMG N=2, xi=1: the degenerate pair resolves across parities") {
    const auto ls = fock::conserved_expectations(
        fock::build_basis(Model::LMG, 2), 1.0);
    CHECK(ls.energies[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::fabs(ls.energies[1]) < 1e-12);
    // one even and one odd member, quantized to 1e-8
    CHECK(ls.conserved[0] * ls.conserved[1] == doctest::Approx(-1.0).epsilon(1e-8));
  }
  SUBCASE("expectations are quantized for every model") {
    for (Model m : {Model::LMG, Model::VM2D, Model::VM3D, Model::IBM}) {
      const auto b = fock::build_basis(m, 4);
      for (double xi : {0.0, 0.5, 1.0}) {
        const auto ls = fock::conserved_expectations(b, xi);
        for (std::size_t i = 0; i < ls.conserved.size(); ++i) {
          double target = 0.0;
          switch (m) {
            case Model::LMG: target = ls.labels[i] == 0 ? 1.0 : -1.0; break;
            case Model::VM2D: target = ls.labels[i]; break;
            case Model::VM3D: target = double(ls.labels[i]) * (ls.labels[i] + 1); break;
            case Model::IBM: target = double(ls.labels[i]) * (ls.labels[i] + 3); break;
          }
          CHECK(std::fabs(ls.conserved[i] - target) < 1e-8);
        }
      }
    }
  }
}

TEST_CASE("the hamiltonian commutes with the conserved operator") {
  for (Model m : {Model::LMG, Model::VM2D, Model::VM3D, Model::IBM}) {
    const int n_max = 6;
    for (int N = 1; N <= n_max; ++N) {
      const auto b = fock::build_basis(m, N);
      const auto c = fock::conserved_operator(b);
      for (double xi : {0.0, 0.2, 0.5, 1.0}) {
        const auto h = fock::full_hamiltonian(b, xi);
        const double dev = (h * c - c * h).cwiseAbs().maxCoeff();
        CAPTURE(to_string(m));
        CAPTURE(N);
        CAPTURE(xi);
        CHECK(dev < 1e-10);
      }
    }
  }
}

TEST_CASE("hamiltonians are symmetric") {
  for (Model m : {Model::LMG, Model::VM2D, Model::VM3D, Model::IBM}) {
    const auto b = fock::build_basis(m, 5);
    for (double xi : {0.0, 0.5, 1.0}) {
      const auto h = fock::full_hamiltonian(b, xi);
      const double scale = std::max(h.cwiseAbs().maxCoeff(), 1.0);
      CHECK((h - h.transpose()).cwiseAbs().maxCoeff() < 1e-12 * scale);
    }
  }
}

TEST_CASE("quasispin Casimir from real matrices") {
  // Jx² + Jy² + Jz² = (N/2)(N/2 + 1), with Jy² = -(t†s - s†t)²/4
  for (int N = 1; N <= 8; ++N) {
    const auto b = fock::build_basis(Model::LMG, N);
    const auto jx = fock::operator_matrix(b, OpId::Jx);
    const auto g = fock::operator_matrix(b, OpId::JyAntisym);
    const auto jz = fock::operator_matrix(b, OpId::Jz);
    const Eigen::MatrixXd cas = jx * jx - 0.25 * (g * g) + jz * jz;
    const double j = 0.5 * N;
    const Eigen::MatrixXd expect =
        j * (j + 1) * Eigen::MatrixXd::Identity(b.dim(), b.dim());
    CHECK((cas - expect).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("pairing and chain-Casimir bookkeeping agree") {
  // P = kappa (N(N + d - 1) - C) with C the so(n+1) Casimir of the chain
  for (Model m : {Model::LMG, Model::VM2D, Model::VM3D, Model::IBM}) {
    const int N = 4;
    const auto b = fock::build_basis(m, N);
    const auto p = fock::operator_matrix(b, OpId::Pairing);
    const auto c = fock::operator_matrix(b, OpId::CasimirSoN1);
    const double shift = [&] {
      switch (m) {
        case Model::LMG: return double(N) * N;
        case Model::VM2D: return double(N) * (N + 1);
        case Model::VM3D: return double(N) * (N + 2);
        case Model::IBM: return double(N) * (N + 4);
      }
      return 0.0;
    }();
    const Eigen::MatrixXd expect =
        pairing_prefactor(m) *
        (shift * Eigen::MatrixXd::Identity(b.dim(), b.dim()) - c);
    CHECK((p - expect).cwiseAbs().maxCoeff() < 1e-9);
  }
}
