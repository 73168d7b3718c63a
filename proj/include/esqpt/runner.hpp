// runner.hpp — batch front end: config parsing/validation, sweep dispatch,
// CSV/JSON/SVG emission, and the run manifest.
#pragma once

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "esqpt/analysis.hpp"
#include "esqpt/model.hpp"
#include "esqpt/otoc.hpp"

namespace esqpt::cli {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  std::string subcommand;
  Model model = Model::LMG;
  int N = 0;
  std::vector<int> N_list;
  double xi = -1.0;
  std::string xi_decimal;  // original text form, kept for arbitrary precision
  std::vector<double> xi_grid;
  std::vector<SectorLabel> sectors;
  std::vector<analysis::PairSpec> pairs;
  eig::PrecisionConfig precision;
  otoc::OtocOp v_op = otoc::OtocOp::Identity;
  otoc::OtocOp w_op = otoc::OtocOp::Identity;
  bool have_ops = false;
  std::vector<double> T_list;  // finite averaging times; empty => stationary only
  bool stationary = true;
  double tol_deg = otoc::kDefaultTolDeg;
  std::vector<int> ells;
  int oracle_max_N = 4;
  int oracle_max_N_ibm = 4;
  std::vector<double> oracle_xis{0.0, 0.2, 0.5, 0.8, 1.0};
  std::vector<int> density_N_list;
  std::string out_dir = ".";
  bool plots = false;
  int workers = 0;  // 0 => environment / OpenMP default
  nlohmann::json raw;
};

// Validates and normalizes a config document. All numeric fields accept
// JSON numbers or decimal strings; strings survive to the arbitrary-
// precision path unrounded.
RunConfig parse_config(const std::string& subcommand, const nlohmann::json& doc);

// Executes the subcommand, writing CSV (+ optional SVG) artifacts and a
// manifest.json into out_dir. Returns the process exit status; failures
// leave a manifest with per-task status and a machine-readable error.
int run(const RunConfig& cfg);

const std::vector<std::string>& subcommands();

}  // namespace esqpt::cli
