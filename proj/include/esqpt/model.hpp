// model.hpp — model identifiers, problem instances, and symmetry-sector labels
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace esqpt {

// Two-level boson models: a scalar boson coupled to an n-component boson.
// LMG: n = 1 (pseudoscalar t), VM2D: n = 2 (circular tau), VM3D: n = 3
// (vector p), IBM: n = 5 (quadrupole d).
enum class Model { LMG, VM2D, VM3D, IBM };

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Number of components of the non-scalar boson (1, 2, 3, 5).
int boson_components(Model m);

// Prefactor of the pairing term in the Hamiltonian (2 for IBM, 1 otherwise).
int pairing_prefactor(Model m);

// Coupling at which the ground-state transition occurs, 1/(1 + 4*prefactor).
double critical_coupling(Model m);

// Dimension of the N-boson Hilbert space: weak compositions of N into
// (components + 1) parts.
std::int64_t full_dimension(Model m, int N);

Model parse_model(std::string_view s);
std::string to_string(Model m);

struct ModelInstance {
  Model model = Model::LMG;
  int N = 0;        // total boson number
  double xi = 0.0;  // control parameter in [0, 1]

  void validate() const;  // throws std::invalid_argument on bad N or xi
};

enum class SectorKind { Parity, AngMomL, AngMomJ, Seniority };

// The conserved label that block-diagonalizes each model.
SectorKind sector_kind(Model m);

struct SectorLabel {
  SectorKind kind = SectorKind::Parity;
  int value = 0;  // parity 0/1, signed ell, J >= 0, or tau >= 0

  friend bool operator==(const SectorLabel&, const SectorLabel&) = default;
};

// Sector containing the global ground state (even / ell=0 / J=0 / tau=0).
SectorLabel ground_sector(Model m);

std::string to_string(const SectorLabel& label);

// Accepts "even", "odd", "l=K" (signed), "j=K", "tau=K".
SectorLabel parse_sector(Model m, std::string_view s);

}  // namespace esqpt
