// otoc.hpp — microcanonical four-point correlator machinery: operators in
// the eigenbasis, stationary (resonant-triple) averages, closed-form
// finite-time averages, and the squared-commutator decomposition.
#pragma once

#include <Eigen/Dense>

#include <vector>

#include "esqpt/eigensolver.hpp"
#include "esqpt/model.hpp"

namespace esqpt::otoc {

using eig::Exec;

enum class OtocOp { Identity, Jx, Dplus, Dminus };

OtocOp parse_otoc_op(std::string_view s);
std::string to_string(OtocOp op);
OtocOp adjoint(OtocOp op);

// Sector reached by applying op to states of `from` (selection rule).
SectorLabel apply_sector(Model model, OtocOp op, SectorLabel from);

// One diagonalized sector: energies ascending plus eigenvectors in the
// sector's quanta chain basis (column k belongs to energies[k]).
struct SectorSpectrum {
  ModelInstance instance;
  SectorLabel label;
  std::vector<int> quanta;
  std::vector<double> energies;
  Eigen::MatrixXd vectors;
};

SectorSpectrum sector_spectrum(const ModelInstance& instance, SectorLabel label,
                               Exec exec = Exec::Parallel);

// Matrix elements <to_a| O |from_b> in the eigenbasis. The chain-basis
// operator is applied through its banded action; selection rules are
// structural: `to` must be the sector apply_sector maps `from` onto.
struct EigenOperator {
  OtocOp op = OtocOp::Identity;
  SectorLabel from, to;
  Eigen::MatrixXd entries;
};

EigenOperator eigen_operator(const SectorSpectrum& to, const SectorSpectrum& from,
                             OtocOp op);

struct MotocResult {
  int j = 0;             // eigenstate index within its sector
  double energy = 0.0;   // E_j
  double value = 0.0;    // Re of the average
  double abs_value = 0.0;
  double T = 0.0;        // averaging time; infinity() marks the stationary limit
  double tol_deg = 0.0;  // resonance tolerance used (stationary only)
};

// Everything a scan needs: the four sector spectra j/j1/j2/j3 visit and the
// four eigenbasis operator factors of N^(j).
struct MotocContext {
  ModelInstance instance;
  OtocOp v_op = OtocOp::Identity, w_op = OtocOp::Identity;
  SectorSpectrum sec_j, sec_j1, sec_j2, sec_j3;
  Eigen::MatrixXd wd;  // <j |W†|j1>
  Eigen::MatrixXd vd;  // <j1|V†|j2>
  Eigen::MatrixXd wm;  // <j2|W |j3>
  Eigen::MatrixXd vm;  // <j3|V |j >
  double e_gs = 0.0;          // global ground-state energy
  double spectral_width = 0.0;
  // (E_j1 + E_j3) sorted ascending with the pair indices, for the
  // resonance window search of the stationary average
  std::vector<double> pair_sum;
  std::vector<int> pair_j1, pair_j3;
};

MotocContext motoc_context(const ModelInstance& instance, SectorLabel sector,
                           OtocOp v, OtocOp w, Exec exec = Exec::Parallel);

// Stationary average: sum of N^(j) over triples with |omega| within
// tol_deg * spectral_width, omega = E_j + E_j2 - E_j1 - E_j3. Triples are
// found by a sorted pair-sum search, not a cubic scan.
MotocResult motoc_stationary(const MotocContext& ctx, int j, double tol_deg);

// Finite-T average with the analytic kernel (e^{i w T} - 1)/(i w T) per
// triple; no time quadrature.
MotocResult motoc_finite_T(const MotocContext& ctx, int j, double T);

// Squared commutator C(t) = A(t) - 2 Re F(t) for eigenstate j.
double squared_commutator(const MotocContext& ctx, int j, double t);

struct MotocScan {
  std::vector<MotocResult> results;      // ordered by energy within the sector
  long accidental_resonances = 0;        // resonant triples not explained by
                                         // pairwise near-degeneracy
};

// Per-eigenstate scan of the j sector; T = infinity() selects the
// stationary average. Per-state failures abort the scan with a report.
MotocScan motoc_scan(const MotocContext& ctx, double T, double tol_deg,
                     Exec exec = Exec::Parallel);

// Default resonance tolerance (relative): 1e-10 of the spectral width.
inline constexpr double kDefaultTolDeg = 1e-10;

}  // namespace esqpt::otoc
