#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cmath>

#include "esqpt/blocks.hpp"
#include "esqpt/eigensolver.hpp"
#include "esqpt/fock.hpp"
#include "esqpt/oracle_check.hpp"

using namespace esqpt;
using blocks::build_block;
using blocks::sector_list;

TEST_CASE("sector lists cover the space exactly") {
  SUBCASE("LMG N=2: even dim 2, odd dim 1") {
    const auto s = sector_list({Model::LMG, 2, 0.0});
    REQUIRE(s.size() == 2);
    CHECK(s[0].dim == 2);
    CHECK(s[1].dim == 1);
  }
  SUBCASE("VM2D N=3: ell from -3 to 3 with the chain dims") {
    const auto s = sector_list({Model::VM2D, 3, 0.0});
    REQUIRE(s.size() == 7);
    for (const auto& sec : s) {
      const int l = std::abs(sec.label.value);
      const int expect = l == 0 ? 2 : (l == 1 ? 2 : 1);
      CHECK(sec.dim == expect);
      CHECK(sec.multiplicity == 1);
    }
  }
  SUBCASE("IBM N=2: tau blocks sized on (n_d, tau) chains") {
    const auto s = sector_list({Model::IBM, 2, 0.0});
    REQUIRE(s.size() == 3);
    CHECK(s[0].dim == 2);  // tau = 0: n_d in {0, 2}
    CHECK(s[1].dim == 1);
    CHECK(s[2].dim == 1);
    CHECK(s[0].multiplicity == 1);
    CHECK(s[1].multiplicity == 5);
    CHECK(s[2].multiplicity == 14);
  }
  SUBCASE("weighted dimensions add up to the full space") {
    for (Model m : {Model::LMG, Model::VM2D, Model::VM3D, Model::IBM})
      for (int N = 1; N <= 10; ++N) {
        const auto s = sector_list({m, N, 0.0});
        std::int64_t total = 0;
        for (const auto& sec : s) total += sec.dim * sec.multiplicity;
        CHECK(total == full_dimension(m, N));
      }
  }
}

TEST_CASE("block entries at pinned points") {
  SUBCASE("LMG N=2, xi=0.5, even") {
    const auto b = build_block({Model::LMG, 2, 0.5}, {SectorKind::Parity, 0});
    REQUIRE(b.quanta == std::vector<int>{0, 2});
    CHECK(b.diag[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(b.diag[1] == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(b.offdiag[0] == doctest::Approx(-0.5).epsilon(1e-15));
  }
  SUBCASE("xi=0 blocks are diagonal in the quanta") {
    for (int N : {3, 8}) {
      for (int p : {0, 1}) {
        const auto b = build_block({Model::LMG, N, 0.0}, {SectorKind::Parity, p});
        for (int i = 0; i < b.dim(); ++i)
          CHECK(b.diag[i] == doctest::Approx(b.quanta[i]));
        for (double e : b.offdiag) CHECK(e == 0.0);
      }
    }
  }
  SUBCASE("VM2D N=2, xi=1, l=0 eigenvalues {0, 3}") {
    const auto b = build_block({Model::VM2D, 2, 1.0}, {SectorKind::AngMomL, 0});
    const auto sp = eig::eig_values(b.tridiag(), eig::PrecisionConfig::dbl());
    CHECK(sp.values[0] == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(sp.values[1] == doctest::Approx(3.0).epsilon(1e-13));
  }
  SUBCASE("labels outside the sector list are rejected") {
    CHECK_THROWS(build_block({Model::LMG, 2, 0.5}, {SectorKind::Parity, 2}));
    CHECK_THROWS(build_block({Model::VM2D, 2, 0.5}, {SectorKind::AngMomL, 3}));
    CHECK_THROWS(build_block({Model::VM2D, 2, 0.5}, {SectorKind::Parity, 0}));
  }
}

TEST_CASE("opposite ell blocks carry identical entries") {
  for (int l : {1, 2, 5}) {
    const ModelInstance inst{Model::VM2D, 9, 0.63};
    const auto a = build_block(inst, {SectorKind::AngMomL, l});
    const auto b = build_block(inst, {SectorKind::AngMomL, -l});
    CHECK(a.diag == b.diag);
    CHECK(a.offdiag == b.offdiag);
  }
}

TEST_CASE("block spectra union reproduces the dense oracle") {
  const auto results = oracle::check_sweep(
      {Model::LMG, Model::VM2D, Model::VM3D, Model::IBM}, 5, 3,
      {0.0, 0.2, 0.5, 0.8, 1.0}, 1e-9);
  for (const auto& r : results) {
    CAPTURE(to_string(r.model));
    CAPTURE(r.N);
    CAPTURE(r.xi);
    CHECK(r.pass);
  }
}

TEST_CASE("analytic endpoint spectra match direct diagonalization") {
  std::vector<int> sizes{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 25, 50};
  for (Model m : {Model::LMG, Model::VM2D, Model::VM3D, Model::IBM})
    for (int N : sizes)
      for (double xi : {0.0, 1.0})
        for (const auto& sec : sector_list({m, N, xi})) {
          if (m == Model::VM2D && sec.label.value < 0) continue;
          const ModelInstance inst{m, N, xi};
          const auto analytic = blocks::analytic_limit_spectrum(inst, sec.label);
          const auto sp = eig::eig_values(build_block(inst, sec.label).tridiag(),
                                          eig::PrecisionConfig::dbl(),
                                          eig::Exec::Serial);
          REQUIRE(analytic.size() == sp.values.size());
          for (std::size_t i = 0; i < analytic.size(); ++i) {
            CAPTURE(to_string(m));
            CAPTURE(N);
            CAPTURE(xi);
            CAPTURE(to_string(sec.label));
            CHECK(std::fabs(analytic[i] - sp.values[i]) < 1e-10);
          }
        }
}

TEST_CASE("analytic limits reject interior couplings") {
  CHECK_THROWS(blocks::analytic_limit_spectrum({Model::LMG, 4, 0.5},
                                               {SectorKind::Parity, 0}));
}

TEST_CASE("band heads of different ell collapse at xi=1") {
  const ModelInstance inst{Model::VM2D, 50, 1.0};
  const auto l0 = blocks::analytic_limit_spectrum(inst, {SectorKind::AngMomL, 0});
  const auto l1 = blocks::analytic_limit_spectrum(inst, {SectorKind::AngMomL, 1});
  CHECK(l0.front() == doctest::Approx(0.0));
  CHECK(l1.front() == doctest::Approx(0.0));
}

TEST_CASE("scaled ground energy moves smoothly in xi") {
  for (Model m : {Model::LMG, Model::VM2D}) {
    const int N = 50;
    double prev = 0.0;
    bool first = true;
    for (double xi = 0.0; xi <= 1.0 + 1e-12; xi += 1e-3) {
      const ModelInstance inst{m, N, std::min(xi, 1.0)};
      const auto sp = eig::eig_values(build_block(inst, ground_sector(m)).tridiag(),
                                      eig::PrecisionConfig::dbl(),
                                      eig::Exec::Serial, {0, 1});
      const double eps0 = sp.values[0] / N;
      if (!first) CHECK(std::fabs(eps0 - prev) < 0.01);
      prev = eps0;
      first = false;
    }
  }
}

TEST_CASE("json export carries numbers as decimal strings") {
  const ModelInstance inst{Model::VM2D, 4, 0.25};
  const auto b = build_block(inst, {SectorKind::AngMomL, 1});
  const auto j = blocks::to_json(b);
  CHECK(j.at("model") == "VM2D");
  CHECK(j.at("N") == 4);
  CHECK(j.at("sector") == "l=1");
  CHECK(j.at("xi").is_string());
  REQUIRE(j.at("diag").size() == static_cast<std::size_t>(b.dim()));
  REQUIRE(j.at("offdiag").size() == static_cast<std::size_t>(b.dim() - 1));
  for (std::size_t i = 0; i < j.at("diag").size(); ++i) {
    CHECK(j.at("diag")[i].is_string());
    CHECK(std::stod(j.at("diag")[i].get<std::string>()) ==
          doctest::Approx(b.diag[i]).epsilon(1e-15));
  }

  const BigFloat xi(0.25, 256);
  const auto bm = blocks::build_block_mp(inst, {SectorKind::AngMomL, 1}, xi);
  const auto jm = blocks::to_json(bm);
  // enough digits to round-trip beyond double precision
  CHECK(jm.at("diag")[0].get<std::string>().size() > 20);
}

TEST_CASE("arbitrary-precision entries match the double path at double scale") {
  const ModelInstance inst{Model::IBM, 12, 0.733};
  const auto bd = build_block(inst, {SectorKind::Seniority, 2});
  const auto bm = blocks::build_block_mp(inst, {SectorKind::Seniority, 2},
                                         BigFloat(0.733, 256));
  for (int i = 0; i < bd.dim(); ++i)
    CHECK(std::fabs(bd.diag[i] - bm.diag[i].to_double()) < 1e-12 * (1.0 + std::fabs(bd.diag[i])));
  for (int i = 0; i + 1 < bd.dim(); ++i)
    CHECK(std::fabs(bd.offdiag[i] - bm.offdiag[i].to_double()) < 1e-12 * (1.0 + std::fabs(bd.offdiag[i])));
}
