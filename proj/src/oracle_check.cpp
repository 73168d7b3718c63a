#include "esqpt/oracle_check.hpp"

#include <algorithm>
#include <cmath>

#include "esqpt/blocks.hpp"
#include "esqpt/fock.hpp"

namespace esqpt::oracle {

std::vector<double> block_union_spectrum(const ModelInstance& inst,
                                         eig::Exec exec) {
  std::vector<double> all;
  for (const auto& sec : blocks::sector_list(inst)) {
    const auto block = blocks::build_block(inst, sec.label);
    const auto sp =
        eig::eig_values(block.tridiag(), eig::PrecisionConfig::dbl(), exec);
    for (double v : sp.values)
      for (std::int64_t m = 0; m < sec.multiplicity; ++m) all.push_back(v);
  }
  std::sort(all.begin(), all.end());
  return all;
}

CheckResult check_instance(const ModelInstance& inst, double tol) {
  const auto basis = fock::build_basis(inst.model, inst.N);
  const auto dense = fock::oracle_spectrum(basis, inst.xi);
  const auto blocks = block_union_spectrum(inst);
  CheckResult r{inst.model, inst.N, inst.xi, 0.0, false};
  if (dense.size() != blocks.size()) {
    r.max_abs_dev = std::numeric_limits<double>::infinity();
    return r;
  }
  for (std::size_t i = 0; i < dense.size(); ++i)
    r.max_abs_dev = std::max(r.max_abs_dev, std::fabs(dense[i] - blocks[i]));
  r.pass = r.max_abs_dev <= tol;
  return r;
}

std::vector<CheckResult> check_sweep(const std::vector<Model>& models, int max_N,
                                     int max_N_ibm,
                                     const std::vector<double>& xis, double tol,
                                     eig::Exec exec) {
  std::vector<ModelInstance> work;
  for (Model m : models) {
    const int cap = m == Model::IBM ? max_N_ibm : max_N;
    for (int N = 1; N <= cap; ++N)
      for (double xi : xis) work.push_back({m, N, xi});
  }
  std::vector<CheckResult> out(work.size());
  const int n = static_cast<int>(work.size());
  if (exec == eig::Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) out[i] = check_instance(work[i], tol);
  } else {
    for (int i = 0; i < n; ++i) out[i] = check_instance(work[i], tol);
  }
  return out;
}

}  // namespace esqpt::oracle
