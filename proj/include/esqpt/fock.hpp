// fock.hpp — brute-force Fock-space representation of the boson operators
// and Hamiltonians at small N. This is the ground truth the closed-form
// sector blocks are validated against; it is built by elementary
// creation/annihilation action only, never from the banded formulas.
#pragma once

#include <Eigen/Dense>

#include <map>
#include <vector>

#include "esqpt/model.hpp"

namespace esqpt::fock {

// Occupation-number basis of the N-boson totally symmetric space. Each state
// is [n_scalar, n_1, ..., n_d] with a deterministic order: ascending
// lexicographic in the non-scalar occupations.
struct FockBasis {
  Model model = Model::LMG;
  int N = 0;
  std::vector<std::vector<int>> states;
  std::map<std::vector<int>, int> index;

  int dim() const { return static_cast<int>(states.size()); }
  int lookup(const std::vector<int>& occ) const;  // -1 if absent
};

FockBasis build_basis(Model model, int N);  // N >= 1

enum class OpId {
  NSecond,      // number operator of the non-scalar boson (all models)
  Jx,           // (t†s + s†t)/2                               (LMG)
  JyAntisym,    // t†s - s†t: the real antisymmetric 2i·Jy     (LMG)
  Jz,           // (t†t - s†s)/2                               (LMG)
  Parity,       // (-1)^{n_t}                                  (LMG)
  Dplus,        // √2 (τ+†σ - σ†τ-)                            (VM2D)
  Dminus,       // √2 (σ†τ+ - τ-†σ)                            (VM2D)
  Ell,          // n+ - n-                                     (VM2D)
  Wsq,          // (D+D- + D-D+)/2 + ℓ²                        (VM2D)
  Jsq,          // angular momentum squared of the p boson     (VM3D)
  So5Casimir,   // seniority Casimir of the d boson            (IBM)
  CasimirSoN1,  // quadratic Casimir of the so(n+1) chain      (all)
  Pairing,      // the model's pairing operator P              (all)
};

// Dense real matrix of the requested operator; throws when the operator is
// not defined for the basis' model.
Eigen::MatrixXd operator_matrix(const FockBasis& basis, OpId op);

// H = (1 - xi) n_second + (xi / N) P, real symmetric.
Eigen::MatrixXd full_hamiltonian(const FockBasis& basis, double xi);

// Full-space eigenvalues, ascending, double precision. Guarded to dim <= 5000.
std::vector<double> oracle_spectrum(const FockBasis& basis, double xi);

// The conserved operator used to label eigenstates (Π, ℓ, J², so(5) Casimir).
Eigen::MatrixXd conserved_operator(const FockBasis& basis);

struct LabeledSpectrum {
  std::vector<double> energies;    // ascending
  std::vector<double> conserved;   // quantized expectation per eigenstate
  std::vector<int> labels;         // sector value (parity / ell / J / tau)
  Eigen::MatrixXd vectors;         // columns, degeneracies resolved
};

// Eigenstates with conserved-operator expectation values. Degenerate
// clusters are re-resolved by simultaneous diagonalization of the conserved
// operator; expectations must land within 1e-8 of a quantized value.
LabeledSpectrum conserved_expectations(const FockBasis& basis, double xi);

}  // namespace esqpt::fock
