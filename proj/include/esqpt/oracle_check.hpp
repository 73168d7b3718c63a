// oracle_check.hpp — cross-validation of the closed-form sector blocks
// against the brute-force Fock-space spectra.
#pragma once

#include <vector>

#include "esqpt/eigensolver.hpp"
#include "esqpt/model.hpp"

namespace esqpt::oracle {

struct CheckResult {
  Model model;
  int N = 0;
  double xi = 0.0;
  double max_abs_dev = 0.0;
  bool pass = false;
};

// Multiset of all block eigenvalues (counted with sector multiplicity),
// ascending; must reproduce fock::oracle_spectrum.
std::vector<double> block_union_spectrum(const ModelInstance& instance,
                                         eig::Exec exec = eig::Exec::Serial);

CheckResult check_instance(const ModelInstance& instance, double tol);

// Sweep over models, sizes, and couplings. max_N applies per model except
// the IBM, which uses max_N_ibm (its space grows much faster).
std::vector<CheckResult> check_sweep(const std::vector<Model>& models, int max_N,
                                     int max_N_ibm,
                                     const std::vector<double>& xis, double tol,
                                     eig::Exec exec = eig::Exec::Parallel);

}  // namespace esqpt::oracle
