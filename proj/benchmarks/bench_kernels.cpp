// bench_kernels.cpp — wall-clock comparison of the serial reference kernels
// against their OpenMP counterparts on representative workloads.
#include <omp.h>

#include <chrono>
#include <cstdio>

#include "esqpt/analysis.hpp"
#include "esqpt/blocks.hpp"
#include "esqpt/eigensolver.hpp"
#include "esqpt/otoc.hpp"

using namespace esqpt;

namespace {

template <class F>
double time_ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-42s %10.1f ms %10.1f ms %8.2fx\n", name, serial_ms, parallel_ms,
              serial_ms / parallel_ms);
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-42s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

  {
    const ModelInstance inst{Model::LMG, 4000, 0.6};
    const auto block = blocks::build_block(inst, ground_sector(Model::LMG));
    const auto tri = block.tridiag();
    eig::Spectrum ss, sp;
    const double ts = time_ms([&] {
      ss = eig::eig_values(tri, eig::PrecisionConfig::dbl(), eig::Exec::Serial);
    });
    const double tp = time_ms([&] {
      sp = eig::eig_values(tri, eig::PrecisionConfig::dbl(), eig::Exec::Parallel);
    });
    report("bisection, LMG even block N=4000", ts, tp);
    if (ss.values != sp.values) std::printf("  !! serial/openmp values differ\n");
  }

  {
    const ModelInstance inst{Model::VM2D, 1500, 0.5};
    const auto block =
        blocks::build_block(inst, SectorLabel{SectorKind::AngMomL, 0});
    auto tri = block.tridiag();
    auto sp = eig::eig_values(tri, eig::PrecisionConfig::dbl());
    auto sp2 = sp;
    const double ts = time_ms([&] {
      eig::eig_vectors(tri, sp, eig::PrecisionConfig::dbl(), eig::Exec::Serial);
    });
    const double tp = time_ms([&] {
      eig::eig_vectors(tri, sp2, eig::PrecisionConfig::dbl(), eig::Exec::Parallel);
    });
    report("inverse iteration, 2DVM l=0 N=1500", ts, tp);
  }

  {
    const ModelInstance inst{Model::LMG, 220, 0.6};
    const auto ctx = otoc::motoc_context(inst, ground_sector(Model::LMG),
                                         otoc::OtocOp::Jx, otoc::OtocOp::Jx);
    otoc::MotocScan rs, rp;
    const double ts = time_ms(
        [&] { rs = otoc::motoc_scan(ctx, 1000.0, 1e-10, eig::Exec::Serial); });
    const double tp = time_ms(
        [&] { rp = otoc::motoc_scan(ctx, 1000.0, 1e-10, eig::Exec::Parallel); });
    report("finite-T correlator scan, LMG N=220", ts, tp);
  }

  {
    std::vector<double> grid;
    for (double x = 0.0; x <= 1.0; x += 0.01) grid.push_back(x);
    std::vector<analysis::CentrifugalCurve> cs, cp;
    const double ts = time_ms([&] {
      cs = analysis::centrifugal_scan(400, {1, 14, 30}, grid, eig::Exec::Serial);
    });
    const double tp = time_ms([&] {
      cp = analysis::centrifugal_scan(400, {1, 14, 30}, grid, eig::Exec::Parallel);
    });
    report("xi sweep, 2DVM N=400 heads", ts, tp);
  }

  return 0;
}
