// analysis.hpp — spectral post-processing: correlation energy diagrams,
// inter-sector gap tracking in xi and in N, exponential/power-law fits,
// centrifugal-barrier scans, and the mean-field critical energy.
#pragma once

#include <string>
#include <vector>

#include "esqpt/blocks.hpp"
#include "esqpt/eigensolver.hpp"
#include "esqpt/model.hpp"

namespace esqpt::analysis {

using eig::Exec;

struct SectorCurves {
  SectorLabel label;
  // eps[g][k]: scaled excitation (E - E0)/N of level k at grid point g
  std::vector<std::vector<double>> eps;
};

struct CorrelationDiagram {
  Model model;
  int N = 0;
  std::vector<double> xi_grid;
  std::vector<SectorCurves> sectors;
};

// Diagonalizes the requested sectors on the grid, subtracting the global
// ground state at each xi. Grid points failing to converge are skipped and
// reported; the sweep continues.
CorrelationDiagram correlation_diagram(Model model, int N,
                                       const std::vector<double>& xi_grid,
                                       const std::vector<SectorLabel>& sectors,
                                       Exec exec = Exec::Parallel);

struct PairSpec {
  SectorLabel a, b;
  int index = 0;  // level index within each sector
};

struct GapCurve {
  PairSpec pair;
  std::vector<double> gap;         // |E_b - E_a|, unscaled
  std::vector<double> resolution;  // certified width of the pair
  std::vector<bool> flagged;       // gap below certified resolution
};

std::vector<GapCurve> gap_vs_xi(Model model, int N,
                                const std::vector<PairSpec>& pairs,
                                const std::vector<double>& xi_grid,
                                Exec exec = Exec::Parallel);

struct GapSample {
  int N = 0;
  double gap = 0.0;       // may underflow to 0 in double; see log_gap
  double log_gap = 0.0;   // natural log, valid far below double range
  std::string gap_str;    // full decimal form at the working precision
  double resolution_log = 0.0;
  bool below_resolution = false;
  int mantissa_bits = 0;  // 0 in double mode
};

struct GapSeries {
  Model model;
  double xi = 0.0;
  PairSpec pair;
  eig::PrecisionConfig precision;
  std::vector<GapSample> samples;
};

// Gap between the pair's levels for each N. In arbitrary mode the working
// precision auto-doubles (cap 4096 bits) whenever the gap falls below
// 2^(16 - bits) times the spectral width.
GapSeries gap_vs_N(Model model, double xi, PairSpec pair,
                   const std::vector<int>& N_list, eig::PrecisionConfig prec,
                   Exec exec = Exec::Parallel,
                   const std::string& xi_decimal = "");

enum class FitForm { Exponential, PowerLaw };

struct FitResult {
  FitForm form = FitForm::Exponential;
  double a = 0.0;  // gap = a e^{-bN} or a N^{-b}
  double b = 0.0;
  double r2 = 0.0;
  std::vector<double> residuals;  // on the linearized (log) scale
};

// Least squares on the linearized form: log gap against N or log N.
FitResult fit_gap(const GapSeries& series, FitForm form);

// Intensive condensate energy e(beta) of the model at coupling xi.
double condensate_energy(Model model, double xi, double beta);

// Scaled critical excitation energy: e(0) minus the condensate minimum,
// located by bracketed scalar search (tolerance 1e-12). Requires xi at or
// above the model's critical coupling.
double meanfield_critical_energy(Model model, double xi);

// Scaled energy of the maximum of the smoothed inverse-spacing level
// density in the ground sector: the finite-size estimate of the critical
// energy.
double density_peak_energy(Model model, double xi, int N,
                           Exec exec = Exec::Parallel);

// Polynomial-in-1/N extrapolation of density_peak_energy over N_list.
double extrapolated_critical_energy(Model model, double xi,
                                    const std::vector<int>& N_list,
                                    Exec exec = Exec::Parallel);

struct CentrifugalCurve {
  int ell = 0;
  std::vector<double> scaled_gap;  // [E_head(ell) - E0] / ell per grid point
};

// 2DVM only: lowest level of each ell block relative to the ground state,
// divided by ell, across the grid.
std::vector<CentrifugalCurve> centrifugal_scan(int N,
                                               const std::vector<int>& ells,
                                               const std::vector<double>& xi_grid,
                                               Exec exec = Exec::Parallel);

}  // namespace esqpt::analysis
