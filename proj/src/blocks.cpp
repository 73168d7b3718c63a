#include "esqpt/blocks.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>

namespace esqpt::blocks {

namespace {

void check_label(const ModelInstance& inst, SectorLabel label) {
  inst.validate();
  if (label.kind != sector_kind(inst.model))
    throw std::invalid_argument("sector label kind does not match the model");
  const int v = label.value;
  switch (inst.model) {
    case Model::LMG:
      if (v != 0 && v != 1) throw std::invalid_argument("parity must be 0 or 1");
      break;
    case Model::VM2D:
      if (std::abs(v) > inst.N) throw std::invalid_argument("|ell| must be <= N");
      break;
    case Model::VM3D:
      if (v < 0 || v > inst.N) throw std::invalid_argument("J must lie in [0, N]");
      break;
    case Model::IBM:
      if (v < 0 || v > inst.N) throw std::invalid_argument("tau must lie in [0, N]");
      break;
  }
}

// lowest second-boson quantum number of the sector chain
int chain_start(Model model, SectorLabel label) {
  switch (model) {
    case Model::LMG: return label.value;           // n_t parity
    case Model::VM2D: return std::abs(label.value);
    case Model::VM3D: return label.value;
    case Model::IBM: return label.value;
  }
  throw std::invalid_argument("unknown model");
}

int chain_dim(Model model, int N, SectorLabel label) {
  return (N - chain_start(model, label)) / 2 + 1;
}

// Pairing-operator matrix elements on the chain, as exact integer products.
// diag: <n|P|n>; hop: the product under the square root of <n+2|P|n>, with
// sign carried separately (sector phases follow the operators' natural
// bases: negative off-diagonal except for the 2DVM).
double pair_diag(Model model, int N, int ell, int n) {
  const double Nn = N - n;
  switch (model) {
    case Model::LMG:
      return static_cast<double>(N) * N - (Nn * (n + 1) + (Nn + 1) * n);
    case Model::VM2D:
      return static_cast<double>(N) * (N + 1) -
             (Nn * (n + 2) + (Nn + 1) * n + static_cast<double>(ell) * ell);
    case Model::VM3D:
      return Nn * (Nn - 1) + static_cast<double>(n - ell) * (n + ell + 1);
    case Model::IBM:
      return 2.0 * (Nn * (Nn - 1) + static_cast<double>(n - ell) * (n + ell + 3));
  }
  throw std::invalid_argument("unknown model");
}

double pair_hop_product(Model model, int N, int ell, int n) {
  const double Nn = N - n;
  switch (model) {
    case Model::LMG:
      return Nn * (n + 1) * (Nn - 1) * (n + 2);
    case Model::VM2D:
      return Nn * (Nn - 1) * static_cast<double>(n + 2 - ell) * (n + 2 + ell);
    case Model::VM3D:
      return Nn * (Nn - 1) * static_cast<double>(n + 2 - ell) * (n + ell + 3);
    case Model::IBM:
      return 4.0 * Nn * (Nn - 1) * static_cast<double>(n + 2 - ell) * (n + ell + 5);
  }
  throw std::invalid_argument("unknown model");
}

double pair_hop_sign(Model model) { return model == Model::VM2D ? 1.0 : -1.0; }

template <class Real>
SectorBlockT<Real> build_block_t(const ModelInstance& inst, SectorLabel label,
                                 const Real& xi) {
  using tr = eig::detail::real_traits<Real>;
  check_label(inst, label);
  SectorBlockT<Real> b;
  b.instance = inst;
  b.label = label;
  const int start = chain_start(inst.model, label);
  const int ell = std::abs(label.value);
  for (int n = start; n <= inst.N; n += 2) b.quanta.push_back(n);

  const Real one_minus_xi = 1.0 - xi;
  const Real xi_over_n = xi / inst.N;
  const double sgn = pair_hop_sign(inst.model);
  for (std::size_t i = 0; i < b.quanta.size(); ++i) {
    const int n = b.quanta[i];
    b.diag.push_back(one_minus_xi * double(n) +
                     xi_over_n * pair_diag(inst.model, inst.N, ell, n));
    if (i + 1 < b.quanta.size()) {
      const Real prod =
          tr::from_double(pair_hop_product(inst.model, inst.N, ell, n), xi);
      b.offdiag.push_back(xi_over_n * tr::fsqrt(prod) * sgn);
    }
  }
  return b;
}

}  // namespace

std::int64_t sector_multiplicity(Model model, SectorLabel label) {
  const std::int64_t v = label.value;
  switch (model) {
    case Model::LMG: return 1;
    case Model::VM2D: return 1;  // signed ell listed separately
    case Model::VM3D: return 2 * v + 1;
    case Model::IBM: return (v + 1) * (v + 2) * (2 * v + 3) / 6;  // so(5) irrep
  }
  throw std::invalid_argument("unknown model");
}

std::vector<SectorInfo> sector_list(const ModelInstance& inst) {
  inst.validate();
  std::vector<SectorInfo> out;
  const SectorKind kind = sector_kind(inst.model);
  const auto add = [&](int value) {
    SectorLabel label{kind, value};
    out.push_back({label, chain_dim(inst.model, inst.N, label),
                   sector_multiplicity(inst.model, label)});
  };
  switch (inst.model) {
    case Model::LMG:
      add(0);
      add(1);
      break;
    case Model::VM2D:
      for (int l = -inst.N; l <= inst.N; ++l) add(l);
      break;
    case Model::VM3D:
    case Model::IBM:
      for (int v = 0; v <= inst.N; ++v) add(v);
      break;
  }
  return out;
}

SectorBlock build_block(const ModelInstance& inst, SectorLabel label) {
  return build_block_t<double>(inst, label, inst.xi);
}

SectorBlockT<BigFloat> build_block_mp(const ModelInstance& inst,
                                      SectorLabel label, const BigFloat& xi) {
  return build_block_t<BigFloat>(inst, label, xi);
}

std::vector<double> analytic_limit_spectrum(const ModelInstance& inst,
                                            SectorLabel label) {
  check_label(inst, label);
  if (inst.xi != 0.0 && inst.xi != 1.0)
    throw std::invalid_argument(
        "analytic_limit_spectrum: xi must be exactly 0 or 1");
  const int N = inst.N;
  std::vector<double> ev;
  if (inst.xi == 0.0) {
    for (int n = chain_start(inst.model, label); n <= N; n += 2)
      ev.push_back(n);
    return ev;
  }
  switch (inst.model) {
    case Model::LMG: {
      // (N² - 4m²)/N over the quasispin projections m of the sector. For
      // even N the |m| > 0 pairs split across parities and m = 0 is even;
      // for odd N both sectors carry m = 1/2, ..., N/2.
      const bool even_sector = label.value == 0;
      std::vector<double> twom;  // 2m values
      if (N % 2 == 0) {
        for (int t = even_sector ? 0 : 2; t <= N; t += 2)
          twom.push_back(t);
      } else {
        for (int t = 1; t <= N; t += 2) twom.push_back(t);
      }
      for (double t : twom)
        ev.push_back((static_cast<double>(N) * N - t * t) / N);
      break;
    }
    case Model::VM2D:
      // so(3) labels step down from N; the block holds w = N, N-2, ... >= |l|
      for (int w = N; w >= std::abs(label.value); w -= 2)
        ev.push_back((static_cast<double>(N) * (N + 1) -
                      static_cast<double>(w) * (w + 1)) /
                     N);
      break;
    case Model::VM3D:
      for (int w = N; w >= label.value; w -= 2)
        ev.push_back((static_cast<double>(N) * (N + 2) -
                      static_cast<double>(w) * (w + 2)) /
                     N);
      break;
    case Model::IBM:
      for (int w = N; w >= label.value; w -= 2)
        ev.push_back(2.0 *
                     (static_cast<double>(N) * (N + 4) -
                      static_cast<double>(w) * (w + 4)) /
                     N);
      break;
  }
  std::sort(ev.begin(), ev.end());
  return ev;
}

namespace {

std::string dec(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class Real>
nlohmann::json block_json(const SectorBlockT<Real>& b,
                          std::string (*fmt)(const Real&)) {
  nlohmann::json j;
  j["model"] = to_string(b.instance.model);
  j["N"] = b.instance.N;
  j["xi"] = dec(b.instance.xi);
  j["sector"] = to_string(b.label);
  nlohmann::json d = nlohmann::json::array();
  for (const Real& v : b.diag) d.push_back(fmt(v));
  nlohmann::json e = nlohmann::json::array();
  for (const Real& v : b.offdiag) e.push_back(fmt(v));
  j["diag"] = std::move(d);
  j["offdiag"] = std::move(e);
  return j;
}

}  // namespace

nlohmann::json to_json(const SectorBlock& b) {
  return block_json<double>(b, +[](const double& v) { return dec(v); });
}

nlohmann::json to_json(const SectorBlockT<BigFloat>& b) {
  return block_json<BigFloat>(
      b, +[](const BigFloat& v) { return v.to_string(); });
}

}  // namespace esqpt::blocks
