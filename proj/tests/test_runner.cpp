#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "esqpt/runner.hpp"
#include "esqpt/svg.hpp"

using namespace esqpt;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("esqpt_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("config fields accept numbers or numeric strings") {
  json doc;
  doc["model"] = "lmg";
  doc["N"] = "50";
  doc["xi"] = "0.5";
  const auto cfg = cli::parse_config("gaps-n", doc);
  CHECK(cfg.N == 50);
  CHECK(cfg.xi == 0.5);
  CHECK(cfg.xi_decimal == "0.5");
  // LMG gap series defaults to the arbitrary-precision path
  CHECK(cfg.precision.mode == eig::PrecisionConfig::Mode::Arbitrary);
  CHECK(cfg.precision.mantissa_bits == 256);
  CHECK(cfg.N_list.front() == 20);
  CHECK(cfg.N_list.back() == 120);
}

TEST_CASE("config validation rejects malformed runs") {
  CHECK_THROWS(cli::parse_config("spectra", json::object()));
  {
    json doc;
    doc["xi"] = "1.5";
    CHECK_THROWS(cli::parse_config("critical-energy", doc));
  }
  {
    json doc;
    doc["otoc"] = {{"tol_deg", -1.0}};
    CHECK_THROWS(cli::parse_config("otoc-scan", doc));
  }
  {
    json doc;
    doc["precision"] = {{"mode", "arbitrary"}, {"mantissa_bits", 16}};
    CHECK_THROWS(cli::parse_config("gaps-n", doc));
  }
  {
    json doc;
    doc["xi_grid"] = {{"start", 0.0}, {"stop", 1.0}, {"step", -0.1}};
    CHECK_THROWS(cli::parse_config("ced", doc));
  }
}

TEST_CASE("ced run writes csv, plot, and a manifest that lists every output") {
  const auto dir = fresh_dir("ced");
  json doc;
  doc["model"] = "lmg";
  doc["N"] = 8;
  doc["xi_grid"] = {0.0, 0.5, 1.0};
  doc["out"] = dir.string();
  doc["plots"] = true;
  const auto cfg = cli::parse_config("ced", doc);
  CHECK(cli::run(cfg) == 0);

  const auto csv = slurp(dir / "ced.csv");
  CHECK(csv.rfind("xi,sector,index,eps\n", 0) == 0);

  const auto man = json::parse(slurp(dir / "manifest.json"));
  CHECK(man.at("status") == "ok");
  CHECK(man.at("subcommand") == "ced");
  CHECK(man.at("config").at("N") == 8);
  for (const auto& out : man.at("outputs")) {
    CHECK(fs::exists(out.get<std::string>()));
  }
  // no orphan artifacts: everything in the directory is accounted for
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string p = entry.path().string();
    if (entry.path().filename() == "manifest.json") continue;
    bool referenced = false;
    for (const auto& out : man.at("outputs"))
      referenced = referenced || out.get<std::string>() == p;
    CHECK(referenced);
  }
}

TEST_CASE("identical configs rewrite byte-identical csv artifacts") {
  const auto dir1 = fresh_dir("rerun1");
  const auto dir2 = fresh_dir("rerun2");
  json doc;
  doc["model"] = "vm2d";
  doc["N"] = 8;
  doc["xi_grid"] = {0.1, 0.4, 0.9};
  doc["pairs"] = json::array({{{"a", "l=0"}, {"b", "l=1"}, {"index", 0}}});
  doc["out"] = dir1.string();
  CHECK(cli::run(cli::parse_config("gaps-xi", doc)) == 0);
  doc["out"] = dir2.string();
  CHECK(cli::run(cli::parse_config("gaps-xi", doc)) == 0);
  CHECK(slurp(dir1 / "gaps_xi.csv") == slurp(dir2 / "gaps_xi.csv"));
}

TEST_CASE("gaps-n emits the series and both fits") {
  const auto dir = fresh_dir("gapsn");
  json doc;
  doc["model"] = "vm2d";
  doc["xi"] = 0.5;
  doc["N_list"] = {20, 30, 40, 50, 60};
  doc["out"] = dir.string();
  CHECK(cli::run(cli::parse_config("gaps-n", doc)) == 0);
  const auto fit = slurp(dir / "gaps_n_fit.csv");
  CHECK(fit.find("exponential") != std::string::npos);
  CHECK(fit.find("power") != std::string::npos);
}

TEST_CASE("otoc-scan emits the documented columns") {
  const auto dir = fresh_dir("otoc");
  json doc;
  doc["model"] = "lmg";
  doc["N"] = 8;
  doc["xi"] = 0.6;
  doc["otoc"] = {{"V", "Jx"}, {"W", "Jx"}, {"T_list", {10.0}}};
  doc["out"] = dir.string();
  CHECK(cli::run(cli::parse_config("otoc-scan", doc)) == 0);
  bool found_finite = false;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name.rfind("otoc_T", 0) == 0 && name.find("_abs") == std::string::npos) {
      found_finite = true;
      CHECK(slurp(entry.path()).rfind("j,E_j,eps,value,T,tol_deg\n", 0) == 0);
    }
  }
  CHECK(found_finite);
}

TEST_CASE("oracle-check exits cleanly and reports per-instance rows") {
  const auto dir = fresh_dir("oracle");
  json doc;
  doc["oracle_max_N"] = 3;
  doc["oracle_max_N_ibm"] = 2;
  doc["out"] = dir.string();
  CHECK(cli::run(cli::parse_config("oracle-check", doc)) == 0);
  const auto csv = slurp(dir / "oracle_check.csv");
  CHECK(csv.rfind("model,N,xi,max_abs_deviation,pass\n", 0) == 0);
  CHECK(csv.find("IBM") != std::string::npos);
  CHECK(fs::exists(dir / "blocks_LMG.json"));
}

TEST_CASE("failures still produce a manifest and a nonzero status") {
  const auto dir = fresh_dir("fail");
  json doc;
  doc["N"] = 10;
  doc["ells"] = {40};  // beyond N: the sweep must fail
  doc["out"] = dir.string();
  const auto cfg = cli::parse_config("centrifugal", doc);
  CHECK(cli::run(cfg) == 1);
  const auto man = json::parse(slurp(dir / "manifest.json"));
  CHECK(man.at("status") == "failed");
  CHECK(man.at("tasks").back().at("status") == "failed");
}

TEST_CASE("empty figures carry a warning annotation") {
  svg::Figure fig("nothing", "x", "y");
  const auto text = fig.render();
  CHECK(text.find("warning: empty dataset") != std::string::npos);
}

TEST_CASE("column-length mismatches are rejected at figure assembly") {
  svg::Figure fig("bad", "x", "y");
  CHECK_THROWS(fig.polyline({1.0, 2.0}, {1.0}, {}));
}
