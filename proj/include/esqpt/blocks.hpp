// blocks.hpp — closed-form symmetry-sector blocks of the model Hamiltonians.
// Each sector is symmetric tridiagonal in the chain of second-boson quanta
// stepping by two; entries come from analytic matrix elements, never from
// dense products, and scale to any N.
#pragma once

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <vector>

#include "esqpt/bigfloat.hpp"
#include "esqpt/eigensolver.hpp"
#include "esqpt/model.hpp"

namespace esqpt::blocks {

struct SectorInfo {
  SectorLabel label;
  int dim = 0;
  std::int64_t multiplicity = 1;  // copies of the block in the full space
};

// Exhaustive, duplicate-free sector list. Block dimensions weighted by
// multiplicity add up to the full-space dimension.
std::vector<SectorInfo> sector_list(const ModelInstance& instance);

std::int64_t sector_multiplicity(Model model, SectorLabel label);

template <class Real>
struct SectorBlockT {
  ModelInstance instance;
  SectorLabel label;
  std::vector<int> quanta;   // second-boson quantum number, stepping by 2
  std::vector<Real> diag;    // energy
  std::vector<Real> offdiag; // energy, size dim - 1

  int dim() const { return static_cast<int>(quanta.size()); }
  eig::TridiagT<Real> tridiag() const { return {diag, offdiag}; }
};
using SectorBlock = SectorBlockT<double>;

SectorBlock build_block(const ModelInstance& instance, SectorLabel label);

// Same entries evaluated directly in MPFR arithmetic; entries are never
// round-tripped through double, so exponentially small spectral gaps
// survive at the requested precision.
SectorBlockT<BigFloat> build_block_mp(const ModelInstance& instance,
                                      SectorLabel label, const BigFloat& xi);

// Closed-form spectra at the solvable endpoints (xi exactly 0 or 1),
// ascending. Rejects any other xi.
std::vector<double> analytic_limit_spectrum(const ModelInstance& instance,
                                            SectorLabel label);

// Documented export form: {model, N, xi, sector, diag[], offdiag[]} with
// numbers as decimal strings.
nlohmann::json to_json(const SectorBlock& block);
nlohmann::json to_json(const SectorBlockT<BigFloat>& block);

}  // namespace esqpt::blocks
