#include "esqpt/fock.hpp"

#include <algorithm>
#include <cmath>

namespace esqpt::fock {

namespace {

void enumerate_states(int modes, int N, std::vector<int>& cur,
                      std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == modes - 1) {
    int used = 0;
    for (int v : cur) used += v;
    cur.push_back(N - used);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  int used = 0;
  for (int v : cur) used += v;
  for (int k = 0; k <= N - used; ++k) {
    cur.push_back(k);
    enumerate_states(modes, N, cur, out);
    cur.pop_back();
  }
}

FockBasis basis_any(Model model, int N) {
  FockBasis b;
  b.model = model;
  b.N = N;
  const int modes = boson_components(model) + 1;
  std::vector<int> cur;
  enumerate_states(modes, N, cur, b.states);
  // canonical order: ascending lexicographic in the non-scalar occupations
  std::sort(b.states.begin(), b.states.end(),
            [](const std::vector<int>& a, const std::vector<int>& c) {
              for (std::size_t i = 1; i < a.size(); ++i)
                if (a[i] != c[i]) return a[i] < c[i];
              return false;
            });
  for (int i = 0; i < static_cast<int>(b.states.size()); ++i)
    b.index[b.states[i]] = i;
  return b;
}

struct OneBodyTerm {
  int create, annihilate;
  double coeff;
};

// Sum of coeff * a†_i a_j as a dense matrix on the fixed-N basis.
Eigen::MatrixXd one_body(const FockBasis& b, const std::vector<OneBodyTerm>& terms) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(b.dim(), b.dim());
  std::vector<int> occ;
  for (int col = 0; col < b.dim(); ++col) {
    for (const auto& t : terms) {
      occ = b.states[col];
      if (occ[t.annihilate] == 0) continue;
      double amp = std::sqrt(static_cast<double>(occ[t.annihilate]));
      occ[t.annihilate] -= 1;
      amp *= std::sqrt(static_cast<double>(occ[t.create] + 1));
      occ[t.create] += 1;
      m(b.index.at(occ), col) += t.coeff * amp;
    }
  }
  return m;
}

struct PairTerm {
  int first, second;  // a_first a_second
  double coeff;
};

// Sum of coeff * a_i a_j mapping the N basis into the (N-2) basis.
Eigen::MatrixXd pair_annihilate(const FockBasis& from, const FockBasis& to,
                                const std::vector<PairTerm>& terms) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(to.dim(), from.dim());
  std::vector<int> occ;
  for (int col = 0; col < from.dim(); ++col) {
    for (const auto& t : terms) {
      occ = from.states[col];
      if (occ[t.second] == 0) continue;
      double amp = std::sqrt(static_cast<double>(occ[t.second]));
      occ[t.second] -= 1;
      if (occ[t.first] == 0) continue;
      amp *= std::sqrt(static_cast<double>(occ[t.first]));
      occ[t.first] -= 1;
      m(to.index.at(occ), col) += t.coeff * amp;
    }
  }
  return m;
}

Eigen::MatrixXd number_diag(const FockBasis& b, int first_mode) {
  Eigen::VectorXd d(b.dim());
  for (int i = 0; i < b.dim(); ++i) {
    int n = 0;
    for (std::size_t k = first_mode; k < b.states[i].size(); ++k)
      n += b.states[i][k];
    d(i) = n;
  }
  return d.asDiagonal();
}

void require_model(const FockBasis& b, Model m, const char* what) {
  if (b.model != m)
    throw std::invalid_argument(std::string(what) + " is not defined for model " +
                                to_string(b.model));
}

// Annihilation part of the model's pair operator (ss minus the scalar
// contraction of the non-scalar boson), mapping N -> N-2. For the IBM this
// is the bracket [d~·d~ - ss] up to overall sign, which drops out of P†P.
Eigen::MatrixXd pair_operator(const FockBasis& b, const FockBasis& lower) {
  std::vector<PairTerm> terms;
  terms.push_back({0, 0, 1.0});  // ss
  switch (b.model) {
    case Model::LMG:
      terms.push_back({1, 1, -1.0});
      break;
    case Model::VM2D:
      terms.push_back({1, 2, -1.0});  // 2 τ+ τ-
      terms.push_back({2, 1, -1.0});
      break;
    case Model::VM3D:
      for (int i = 1; i <= 3; ++i) terms.push_back({i, i, -1.0});
      break;
    case Model::IBM:
      // -Σ_μ (-1)^μ d_μ d_{-μ}, modes 1..5 carry μ = -2..2
      for (int mu = -2; mu <= 2; ++mu) {
        const double sign = (mu % 2 == 0) ? 1.0 : -1.0;
        terms.push_back({3 + mu, 3 - mu, -sign});
      }
      break;
  }
  return pair_annihilate(b, lower, terms);
}

Eigen::MatrixXd casimir_so_n1(const FockBasis& b);

Eigen::MatrixXd pairing(const FockBasis& b) {
  const int N = b.N;
  const double kappa = pairing_prefactor(b.model);
  switch (b.model) {
    case Model::LMG: {
      Eigen::MatrixXd m = one_body(b, {{1, 0, 1.0}, {0, 1, 1.0}});
      return static_cast<double>(N) * N * Eigen::MatrixXd::Identity(b.dim(), b.dim()) -
             m * m;
    }
    case Model::VM2D:
      return static_cast<double>(N) * (N + 1) *
                 Eigen::MatrixXd::Identity(b.dim(), b.dim()) -
             operator_matrix(b, OpId::Wsq);
    case Model::VM3D:
      return static_cast<double>(N) * (N + 2) *
                 Eigen::MatrixXd::Identity(b.dim(), b.dim()) -
             casimir_so_n1(b);
    case Model::IBM: {
      if (N < 2) return Eigen::MatrixXd::Zero(b.dim(), b.dim());
      const FockBasis lower = basis_any(b.model, N - 2);
      const Eigen::MatrixXd p = pair_operator(b, lower);
      return kappa * (p.transpose() * p);
    }
  }
  throw std::invalid_argument("unknown model");
}

Eigen::MatrixXd casimir_so_n1(const FockBasis& b) {
  const int N = b.N;
  switch (b.model) {
    case Model::LMG: {
      Eigen::MatrixXd m = one_body(b, {{1, 0, 1.0}, {0, 1, 1.0}});
      return m * m;  // (2 Jx)^2, the so(2) invariant of the chain
    }
    case Model::VM2D:
      return operator_matrix(b, OpId::Wsq);
    case Model::VM3D: {
      // -Σ_i (p_i†s - s†p_i)² - Σ_{i<j} (p_i†p_j - p_j†p_i)²
      Eigen::MatrixXd c = Eigen::MatrixXd::Zero(b.dim(), b.dim());
      for (int i = 1; i <= 3; ++i) {
        Eigen::MatrixXd a = one_body(b, {{i, 0, 1.0}, {0, i, -1.0}});
        c -= a * a;
      }
      c += operator_matrix(b, OpId::Jsq);
      return c;
    }
    case Model::IBM: {
      if (N < 2)
        return static_cast<double>(N) * (N + 4) *
               Eigen::MatrixXd::Identity(b.dim(), b.dim());
      const FockBasis lower = basis_any(b.model, N - 2);
      const Eigen::MatrixXd p = pair_operator(b, lower);
      return static_cast<double>(N) * (N + 4) *
                 Eigen::MatrixXd::Identity(b.dim(), b.dim()) -
             p.transpose() * p;
    }
  }
  throw std::invalid_argument("unknown model");
}

}  // namespace

int FockBasis::lookup(const std::vector<int>& occ) const {
  const auto it = index.find(occ);
  return it == index.end() ? -1 : it->second;
}

FockBasis build_basis(Model model, int N) {
  if (N < 1) throw std::invalid_argument("build_basis: N must be >= 1");
  return basis_any(model, N);
}

Eigen::MatrixXd operator_matrix(const FockBasis& b, OpId op) {
  switch (op) {
    case OpId::NSecond:
      return number_diag(b, 1);
    case OpId::Jx:
      require_model(b, Model::LMG, "Jx");
      return one_body(b, {{1, 0, 0.5}, {0, 1, 0.5}});
    case OpId::JyAntisym:
      require_model(b, Model::LMG, "Jy");
      return one_body(b, {{1, 0, 1.0}, {0, 1, -1.0}});
    case OpId::Jz:
      require_model(b, Model::LMG, "Jz");
      return one_body(b, {{1, 1, 0.5}, {0, 0, -0.5}});
    case OpId::Parity: {
      require_model(b, Model::LMG, "Parity");
      Eigen::VectorXd d(b.dim());
      for (int i = 0; i < b.dim(); ++i)
        d(i) = (b.states[i][1] % 2 == 0) ? 1.0 : -1.0;
      return d.asDiagonal();
    }
    case OpId::Dplus: {
      require_model(b, Model::VM2D, "D+");
      const double r2 = std::sqrt(2.0);
      return one_body(b, {{1, 0, r2}, {0, 2, -r2}});
    }
    case OpId::Dminus: {
      require_model(b, Model::VM2D, "D-");
      const double r2 = std::sqrt(2.0);
      return one_body(b, {{0, 1, r2}, {2, 0, -r2}});
    }
    case OpId::Ell: {
      require_model(b, Model::VM2D, "ell");
      Eigen::VectorXd d(b.dim());
      for (int i = 0; i < b.dim(); ++i)
        d(i) = b.states[i][1] - b.states[i][2];
      return d.asDiagonal();
    }
    case OpId::Wsq: {
      require_model(b, Model::VM2D, "W²");
      const Eigen::MatrixXd dp = operator_matrix(b, OpId::Dplus);
      const Eigen::MatrixXd dm = operator_matrix(b, OpId::Dminus);
      const Eigen::MatrixXd l = operator_matrix(b, OpId::Ell);
      return 0.5 * (dp * dm + dm * dp) + l * l;
    }
    case OpId::Jsq: {
      require_model(b, Model::VM3D, "J²");
      Eigen::MatrixXd j = Eigen::MatrixXd::Zero(b.dim(), b.dim());
      for (int a = 1; a <= 3; ++a)
        for (int c = a + 1; c <= 3; ++c) {
          Eigen::MatrixXd k = one_body(b, {{a, c, 1.0}, {c, a, -1.0}});
          j -= k * k;
        }
      return j;
    }
    case OpId::So5Casimir: {
      require_model(b, Model::IBM, "so(5) Casimir");
      // n_d(n_d + 3) minus the d-boson pair product
      Eigen::MatrixXd nd = number_diag(b, 1);
      Eigen::MatrixXd c =
          nd * (nd + 3.0 * Eigen::MatrixXd::Identity(b.dim(), b.dim()));
      if (b.N >= 2) {
        const FockBasis lower = basis_any(b.model, b.N - 2);
        std::vector<PairTerm> dd;
        for (int mu = -2; mu <= 2; ++mu) {
          const double sign = (mu % 2 == 0) ? 1.0 : -1.0;
          dd.push_back({3 + mu, 3 - mu, sign});
        }
        const Eigen::MatrixXd r = pair_annihilate(b, lower, dd);
        c -= r.transpose() * r;
      }
      return c;
    }
    case OpId::CasimirSoN1:
      return casimir_so_n1(b);
    case OpId::Pairing:
      return pairing(b);
  }
  throw std::invalid_argument("unknown operator id");
}

Eigen::MatrixXd full_hamiltonian(const FockBasis& b, double xi) {
  if (!(xi >= 0.0 && xi <= 1.0))
    throw std::invalid_argument("full_hamiltonian: xi must lie in [0, 1]");
  return (1.0 - xi) * operator_matrix(b, OpId::NSecond) +
         (xi / b.N) * operator_matrix(b, OpId::Pairing);
}

std::vector<double> oracle_spectrum(const FockBasis& b, double xi) {
  if (b.dim() > 5000)
    throw Error("oracle_spectrum: dimension " + std::to_string(b.dim()) +
                " exceeds the dense guard of 5000");
  const Eigen::MatrixXd h = full_hamiltonian(b, xi);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

Eigen::MatrixXd conserved_operator(const FockBasis& b) {
  switch (b.model) {
    case Model::LMG: return operator_matrix(b, OpId::Parity);
    case Model::VM2D: return operator_matrix(b, OpId::Ell);
    case Model::VM3D: return operator_matrix(b, OpId::Jsq);
    case Model::IBM: return operator_matrix(b, OpId::So5Casimir);
  }
  throw std::invalid_argument("unknown model");
}

namespace {

// sector value and quantized target for a measured expectation
std::pair<int, double> quantize(Model m, double e) {
  switch (m) {
    case Model::LMG:
      return e >= 0.0 ? std::pair<int, double>{0, 1.0}
                      : std::pair<int, double>{1, -1.0};
    case Model::VM2D: {
      const int l = static_cast<int>(std::lround(e));
      return {l, static_cast<double>(l)};
    }
    case Model::VM3D: {
      const int j = static_cast<int>(std::lround((-1.0 + std::sqrt(1.0 + 4.0 * std::max(0.0, e))) / 2.0));
      return {j, static_cast<double>(j) * (j + 1)};
    }
    case Model::IBM: {
      const int tau = static_cast<int>(std::lround((-3.0 + std::sqrt(9.0 + 4.0 * std::max(0.0, e))) / 2.0));
      return {tau, static_cast<double>(tau) * (tau + 3)};
    }
  }
  throw std::invalid_argument("unknown model");
}

}  // namespace

LabeledSpectrum conserved_expectations(const FockBasis& b, double xi) {
  if (b.dim() > 5000)
    throw Error("conserved_expectations: dimension exceeds the dense guard");
  const Eigen::MatrixXd h = full_hamiltonian(b, xi);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  const Eigen::MatrixXd c = conserved_operator(b);

  LabeledSpectrum out;
  const int dim = b.dim();
  out.energies.assign(es.eigenvalues().data(), es.eigenvalues().data() + dim);
  out.vectors = es.eigenvectors();
  out.conserved.assign(dim, 0.0);
  out.labels.assign(dim, 0);

  const double width =
      std::max(out.energies.back() - out.energies.front(), 1e-300);
  const double cluster_tol = 1e-9 * width;

  int lo = 0;
  while (lo < dim) {
    int hi = lo + 1;
    while (hi < dim && out.energies[hi] - out.energies[hi - 1] <= cluster_tol)
      ++hi;
    const int k = hi - lo;
    if (k > 1) {
      // raw eigenvectors of a degenerate cluster mix sectors; resolve by
      // simultaneously diagonalizing the conserved operator in the cluster
      const Eigen::MatrixXd sub = out.vectors.middleCols(lo, k);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> cs(sub.transpose() * c * sub);
      // descending expectation within the cluster
      Eigen::MatrixXd rot(k, k);
      for (int i = 0; i < k; ++i) rot.col(i) = cs.eigenvectors().col(k - 1 - i);
      out.vectors.middleCols(lo, k) = sub * rot;
      for (int i = 0; i < k; ++i)
        out.conserved[lo + i] = cs.eigenvalues()(k - 1 - i);
    } else {
      out.conserved[lo] =
          out.vectors.col(lo).dot(c * out.vectors.col(lo));
    }
    lo = hi;
  }

  for (int i = 0; i < dim; ++i) {
    const auto [label, target] = quantize(b.model, out.conserved[i]);
    if (std::fabs(out.conserved[i] - target) > 1e-6)
      throw Error("conserved_expectations: expectation " +
                  std::to_string(out.conserved[i]) +
                  " is not quantized after degeneracy resolution");
    out.labels[i] = label;
  }
  return out;
}

}  // namespace esqpt::fock
