#include "esqpt/model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace esqpt {

int boson_components(Model m) {
  switch (m) {
    case Model::LMG: return 1;
    case Model::VM2D: return 2;
    case Model::VM3D: return 3;
    case Model::IBM: return 5;
  }
  throw std::invalid_argument("unknown model");
}

int pairing_prefactor(Model m) { return m == Model::IBM ? 2 : 1; }

double critical_coupling(Model m) {
  return 1.0 / (1.0 + 4.0 * pairing_prefactor(m));
}

std::int64_t full_dimension(Model m, int N) {
  if (N < 0) throw std::invalid_argument("full_dimension: N < 0");
  // C(N + d, d) with d = components + 1 - 1 slots beyond the scalar
  const int d = boson_components(m);
  std::int64_t dim = 1;
  for (int k = 1; k <= d; ++k) dim = dim * (N + k) / k;
  return dim;
}

Model parse_model(std::string_view s) {
  std::string t(s);
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (t == "lmg") return Model::LMG;
  if (t == "vm2d" || t == "2dvm") return Model::VM2D;
  if (t == "vm3d" || t == "vm") return Model::VM3D;
  if (t == "ibm") return Model::IBM;
  throw std::invalid_argument("unknown model id: " + std::string(s));
}

std::string to_string(Model m) {
  switch (m) {
    case Model::LMG: return "LMG";
    case Model::VM2D: return "VM2D";
    case Model::VM3D: return "VM3D";
    case Model::IBM: return "IBM";
  }
  return "?";
}

void ModelInstance::validate() const {
  if (N < 1) throw std::invalid_argument("ModelInstance: N must be >= 1");
  if (!(xi >= 0.0 && xi <= 1.0))
    throw std::invalid_argument("ModelInstance: xi must lie in [0, 1]");
}

SectorKind sector_kind(Model m) {
  switch (m) {
    case Model::LMG: return SectorKind::Parity;
    case Model::VM2D: return SectorKind::AngMomL;
    case Model::VM3D: return SectorKind::AngMomJ;
    case Model::IBM: return SectorKind::Seniority;
  }
  throw std::invalid_argument("unknown model");
}

SectorLabel ground_sector(Model m) { return SectorLabel{sector_kind(m), 0}; }

std::string to_string(const SectorLabel& label) {
  switch (label.kind) {
    case SectorKind::Parity: return label.value == 0 ? "even" : "odd";
    case SectorKind::AngMomL: return "l=" + std::to_string(label.value);
    case SectorKind::AngMomJ: return "j=" + std::to_string(label.value);
    case SectorKind::Seniority: return "tau=" + std::to_string(label.value);
  }
  return "?";
}

SectorLabel parse_sector(Model m, std::string_view s) {
  const SectorKind kind = sector_kind(m);
  std::string t(s);
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (kind == SectorKind::Parity) {
    if (t == "even" || t == "0") return {kind, 0};
    if (t == "odd" || t == "1") return {kind, 1};
    throw std::invalid_argument("bad parity sector: " + std::string(s));
  }
  std::string_view rest = t;
  const auto eq = t.find('=');
  if (eq != std::string::npos) rest = std::string_view(t).substr(eq + 1);
  int v = 0;
  const auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), v);
  if (ec != std::errc() || p != rest.data() + rest.size())
    throw std::invalid_argument("bad sector label: " + std::string(s));
  return {kind, v};
}

}  // namespace esqpt
