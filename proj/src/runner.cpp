#include "esqpt/runner.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "esqpt/blocks.hpp"
#include "esqpt/csv.hpp"
#include "esqpt/oracle_check.hpp"
#include "esqpt/svg.hpp"

namespace esqpt::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

double num_field(const json& v, const char* what) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    try {
      return std::stod(v.get<std::string>());
    } catch (...) {
    }
  }
  throw std::invalid_argument(std::string("config: ") + what +
                              " must be a number or numeric string");
}

int int_field(const json& v, const char* what) {
  const double d = num_field(v, what);
  const int i = static_cast<int>(std::llround(d));
  if (std::fabs(d - i) > 1e-9)
    throw std::invalid_argument(std::string("config: ") + what +
                                " must be an integer");
  return i;
}

std::vector<double> grid_field(const json& v, const char* what) {
  std::vector<double> g;
  if (v.is_array()) {
    for (const auto& e : v) g.push_back(num_field(e, what));
  } else if (v.is_object()) {
    const double start = num_field(v.at("start"), "grid start");
    const double stop = num_field(v.at("stop"), "grid stop");
    const double step = num_field(v.at("step"), "grid step");
    if (!(step > 0.0)) throw std::invalid_argument("config: grid step must be > 0");
    for (double x = start; x <= stop + step * 1e-9; x += step)
      g.push_back(std::min(x, stop));
  } else {
    throw std::invalid_argument(std::string("config: ") + what +
                                " must be an array or {start, stop, step}");
  }
  if (g.empty()) throw std::invalid_argument(std::string("config: empty ") + what);
  return g;
}

SectorLabel default_partner(Model m) {
  switch (m) {
    case Model::LMG: return {SectorKind::Parity, 1};
    case Model::VM2D: return {SectorKind::AngMomL, 1};
    case Model::VM3D: return {SectorKind::AngMomJ, 1};
    case Model::IBM: return {SectorKind::Seniority, 1};
  }
  throw std::invalid_argument("unknown model");
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

struct Manifest {
  json doc;
  std::vector<std::string> outputs;
  bool failed = false;

  Manifest(const RunConfig& cfg) {
    doc["artifact"] = "esqpt-lab";
    doc["version"] = kVersion;
    doc["subcommand"] = cfg.subcommand;
    doc["config"] = cfg.raw;
    doc["started"] = timestamp();
    doc["tasks"] = json::array();
    doc["outputs"] = json::array();
    doc["notes"] = json::object();
  }

  void task_ok(const std::string& name, const json& detail = {}) {
    json t;
    t["name"] = name;
    t["status"] = "ok";
    if (!detail.is_null()) t["detail"] = detail;
    doc["tasks"].push_back(t);
  }

  void task_failed(const std::string& name, const std::string& error) {
    json t;
    t["name"] = name;
    t["status"] = "failed";
    t["error"] = error;
    doc["tasks"].push_back(t);
    failed = true;
  }

  void add_output(const std::string& path) {
    outputs.push_back(path);
    doc["outputs"].push_back(path);
  }

  void note(const std::string& key, const json& value) { doc["notes"][key] = value; }

  int finish(const std::string& out_dir) {
    doc["finished"] = timestamp();
    doc["status"] = failed ? "failed" : "ok";
    std::ofstream out(fs::path(out_dir) / "manifest.json", std::ios::binary);
    out << doc.dump(2) << '\n';
    if (failed) {
      json err;
      err["error"] = doc["tasks"].back().value("error", "run failed");
      std::cerr << err.dump() << '\n';
    }
    return failed ? 1 : 0;
  }
};

svg::Style solid_blue() { return {"#1f6fb5", 1.2, ""}; }
svg::Style dashed_red() { return {"#c23b3b", 1.2, "5,3"}; }
svg::Style marker_pink() { return {"#d45fa2", 1.4, "7,3,2,3"}; }

std::string pair_tag(const analysis::PairSpec& p) {
  return to_string(p.a) + "-" + to_string(p.b);
}

// ---- subcommand implementations ------------------------------------------

void run_ced(const RunConfig& cfg, Manifest& man) {
  const auto diagram = analysis::correlation_diagram(
      cfg.model, cfg.N, cfg.xi_grid, cfg.sectors);
  const std::string path = (fs::path(cfg.out_dir) / "ced.csv").string();
  csv::Writer w(path, {"xi", "sector", "index", "eps"});
  for (std::size_t g = 0; g < diagram.xi_grid.size(); ++g)
    for (const auto& sec : diagram.sectors)
      for (std::size_t k = 0; k < sec.eps[g].size(); ++k)
        w.write_row({csv::num(diagram.xi_grid[g]), to_string(sec.label),
                     std::to_string(k), csv::num(sec.eps[g][k])});
  man.add_output(path);

  if (cfg.plots) {
    svg::Figure fig("correlation energy diagram: " + to_string(cfg.model) +
                        " N=" + std::to_string(cfg.N),
                    "xi", "(E - E0)/N");
    for (std::size_t s = 0; s < diagram.sectors.size(); ++s) {
      const auto& sec = diagram.sectors[s];
      const std::size_t levels = sec.eps.empty() ? 0 : sec.eps.front().size();
      for (std::size_t k = 0; k < levels; ++k) {
        std::vector<double> ys(diagram.xi_grid.size());
        for (std::size_t g = 0; g < diagram.xi_grid.size(); ++g)
          ys[g] = sec.eps[g][k];
        fig.polyline(diagram.xi_grid, ys, s == 0 ? solid_blue() : dashed_red());
      }
      fig.annotate(to_string(sec.label) + (s == 0 ? " (solid)" : " (dashed)"));
    }
    const std::string spath = (fs::path(cfg.out_dir) / "ced.svg").string();
    fig.save(spath);
    man.add_output(spath);
  }
  man.task_ok("ced");
}

void run_gaps_xi(const RunConfig& cfg, Manifest& man) {
  const auto curves =
      analysis::gap_vs_xi(cfg.model, cfg.N, cfg.pairs, cfg.xi_grid);
  const std::string path = (fs::path(cfg.out_dir) / "gaps_xi.csv").string();
  csv::Writer w(path, {"xi", "sector", "index", "value", "resolution", "flagged"});
  for (const auto& c : curves)
    for (std::size_t g = 0; g < cfg.xi_grid.size(); ++g)
      w.write_row({csv::num(cfg.xi_grid[g]), pair_tag(c.pair),
                   std::to_string(c.pair.index), csv::num(c.gap[g]),
                   csv::num(c.resolution[g]), c.flagged[g] ? "1" : "0"});
  man.add_output(path);

  if (cfg.plots) {
    svg::Figure fig("inter-sector gaps: " + to_string(cfg.model) +
                        " N=" + std::to_string(cfg.N),
                    "xi", "gap", false, true);
    for (std::size_t i = 0; i < curves.size(); ++i) {
      fig.polyline(cfg.xi_grid, curves[i].gap,
                   i % 2 == 0 ? solid_blue() : dashed_red());
      fig.annotate("pair " + pair_tag(curves[i].pair) + " i=" +
                   std::to_string(curves[i].pair.index));
    }
    const std::string spath = (fs::path(cfg.out_dir) / "gaps_xi.svg").string();
    fig.save(spath);
    man.add_output(spath);
  }
  man.task_ok("gaps-xi");
}

void run_gaps_n(const RunConfig& cfg, Manifest& man) {
  const auto series =
      analysis::gap_vs_N(cfg.model, cfg.xi, cfg.pairs.at(0), cfg.N_list,
                         cfg.precision, eig::Exec::Parallel, cfg.xi_decimal);
  const std::string path = (fs::path(cfg.out_dir) / "gaps_n.csv").string();
  csv::Writer w(path, {"N", "sector", "index", "value", "log_value",
                       "below_resolution", "mantissa_bits"});
  for (const auto& s : series.samples)
    w.write_row({std::to_string(s.N), pair_tag(series.pair),
                 std::to_string(series.pair.index), s.gap_str,
                 csv::num(s.log_gap), s.below_resolution ? "1" : "0",
                 std::to_string(s.mantissa_bits)});
  man.add_output(path);

  json fits = json::object();
  const std::string fpath = (fs::path(cfg.out_dir) / "gaps_n_fit.csv").string();
  csv::Writer fw(fpath, {"form", "a", "b", "r2"});
  for (auto form : {analysis::FitForm::Exponential, analysis::FitForm::PowerLaw}) {
    const auto fit = analysis::fit_gap(series, form);
    const char* name =
        form == analysis::FitForm::Exponential ? "exponential" : "power";
    fw.write_row({name, csv::num(fit.a), csv::num(fit.b), csv::num(fit.r2)});
    fits[name] = {{"a", fit.a}, {"b", fit.b}, {"r2", fit.r2}};
  }
  man.add_output(fpath);

  if (cfg.plots) {
    const bool loglog = cfg.model != Model::LMG;
    svg::Figure fig("gap scaling: " + to_string(cfg.model) + " xi=" +
                        std::to_string(cfg.xi),
                    "N", "gap", loglog, true);
    std::vector<double> xs, ys;
    for (const auto& s : series.samples) {
      xs.push_back(s.N);
      ys.push_back(std::exp(s.log_gap));
    }
    fig.polyline(xs, ys, solid_blue());
    const std::string spath = (fs::path(cfg.out_dir) / "gaps_n.svg").string();
    fig.save(spath);
    man.add_output(spath);
  }
  int worst_bits = 0;
  for (const auto& s : series.samples)
    worst_bits = std::max(worst_bits, s.mantissa_bits);
  man.note("mantissa_bits_used", worst_bits);
  man.task_ok("gaps-n", fits);
}

void run_centrifugal(const RunConfig& cfg, Manifest& man) {
  const auto curves = analysis::centrifugal_scan(cfg.N, cfg.ells, cfg.xi_grid);
  const std::string path = (fs::path(cfg.out_dir) / "centrifugal.csv").string();
  csv::Writer w(path, {"xi", "sector", "index", "value"});
  for (const auto& c : curves)
    for (std::size_t g = 0; g < cfg.xi_grid.size(); ++g)
      w.write_row({csv::num(cfg.xi_grid[g]), "l=" + std::to_string(c.ell), "0",
                   csv::num(c.scaled_gap[g])});
  man.add_output(path);

  if (cfg.plots) {
    svg::Figure fig("centrifugal scan: N=" + std::to_string(cfg.N), "xi",
                    "[E_head(l) - E0]/l", false, true);
    for (std::size_t i = 0; i < curves.size(); ++i) {
      fig.polyline(cfg.xi_grid, curves[i].scaled_gap,
                   i % 2 == 0 ? solid_blue() : dashed_red());
      fig.annotate("l=" + std::to_string(curves[i].ell));
    }
    const std::string spath = (fs::path(cfg.out_dir) / "centrifugal.svg").string();
    fig.save(spath);
    man.add_output(spath);
  }
  man.task_ok("centrifugal");
}

void run_otoc_scan(const RunConfig& cfg, Manifest& man) {
  const ModelInstance inst{cfg.model, cfg.N, cfg.xi};
  const SectorLabel sector =
      cfg.sectors.empty() ? ground_sector(cfg.model) : cfg.sectors.front();
  const auto ctx = otoc::motoc_context(inst, sector, cfg.v_op, cfg.w_op);

  std::vector<double> times = cfg.T_list;
  const double inf = std::numeric_limits<double>::infinity();
  if (cfg.stationary) times.insert(times.begin(), inf);

  double eps_c = -1.0;
  if (cfg.xi >= critical_coupling(cfg.model))
    eps_c = analysis::meanfield_critical_energy(cfg.model, cfg.xi);

  long accidental = 0;
  for (double T : times) {
    const auto scan = otoc::motoc_scan(ctx, T, cfg.tol_deg);
    accidental += scan.accidental_resonances;
    char tbuf[24];
    std::snprintf(tbuf, sizeof tbuf, "T%g", T);
    const std::string tag = std::isinf(T) ? "stationary" : tbuf;
    const std::string base = "otoc_" + tag;
    const std::string path = (fs::path(cfg.out_dir) / (base + ".csv")).string();
    const std::string apath =
        (fs::path(cfg.out_dir) / (base + "_abs.csv")).string();
    csv::Writer w(path, {"j", "E_j", "eps", "value", "T", "tol_deg"});
    csv::Writer wa(apath, {"j", "E_j", "eps", "value", "T", "tol_deg"});
    for (const auto& r : scan.results) {
      const double eps = (r.energy - ctx.e_gs) / cfg.N;
      const std::string ts = std::isinf(T) ? "inf" : csv::num(T);
      const std::string td = std::isinf(T) ? csv::num(r.tol_deg) : "0";
      w.write_row({std::to_string(r.j), csv::num(r.energy), csv::num(eps),
                   csv::num(r.value), ts, td});
      wa.write_row({std::to_string(r.j), csv::num(r.energy), csv::num(eps),
                    csv::num(r.abs_value), ts, td});
    }
    man.add_output(path);
    man.add_output(apath);

    if (cfg.plots) {
      svg::Figure fig("mOTOC scan: " + to_string(cfg.model) + " N=" +
                          std::to_string(cfg.N) + " " + tag,
                      "(E - E_gs)/N", "average");
      std::vector<double> xs, ys;
      for (const auto& r : scan.results) {
        xs.push_back((r.energy - ctx.e_gs) / cfg.N);
        ys.push_back(r.value);
      }
      fig.polyline(xs, ys, solid_blue());
      if (eps_c > 0.0) fig.vline(eps_c, marker_pink());
      const std::string spath =
          (fs::path(cfg.out_dir) / (base + ".svg")).string();
      fig.save(spath);
      man.add_output(spath);
    }
  }
  man.note("accidental_resonances", accidental);
  if (eps_c > 0.0) man.note("meanfield_critical_energy", eps_c);
  man.task_ok("otoc-scan");
}

void run_critical_energy(const RunConfig& cfg, Manifest& man) {
  const double eps_c = analysis::meanfield_critical_energy(cfg.model, cfg.xi);
  const std::string path =
      (fs::path(cfg.out_dir) / "critical_energy.csv").string();
  csv::Writer w(path, {"xi", "sector", "index", "value"});
  w.write_row({csv::num(cfg.xi), "meanfield", "0", csv::num(eps_c)});
  json detail;
  detail["meanfield"] = eps_c;
  if (!cfg.density_N_list.empty()) {
    const double est = analysis::extrapolated_critical_energy(
        cfg.model, cfg.xi, cfg.density_N_list);
    w.write_row({csv::num(cfg.xi), "level-density", "0", csv::num(est)});
    detail["level_density_extrapolation"] = est;
  }
  man.add_output(path);
  man.task_ok("critical-energy", detail);
}

void run_oracle_check(const RunConfig& cfg, Manifest& man) {
  const double tol = 1e-9;
  const auto results = oracle::check_sweep(
      {Model::LMG, Model::VM2D, Model::VM3D, Model::IBM}, cfg.oracle_max_N,
      cfg.oracle_max_N_ibm, cfg.oracle_xis, tol);
  const std::string path = (fs::path(cfg.out_dir) / "oracle_check.csv").string();
  csv::Writer w(path, {"model", "N", "xi", "max_abs_deviation", "pass"});
  bool all_pass = true;
  double worst = 0.0;
  for (const auto& r : results) {
    w.write_row({to_string(r.model), std::to_string(r.N), csv::num(r.xi),
                 csv::num(r.max_abs_dev), r.pass ? "1" : "0"});
    all_pass = all_pass && r.pass;
    worst = std::max(worst, r.max_abs_dev);
  }
  man.add_output(path);

  // block export in the documented JSON form, one file per model
  for (Model m : {Model::LMG, Model::VM2D, Model::VM3D, Model::IBM}) {
    const int N = std::min(m == Model::IBM ? cfg.oracle_max_N_ibm : cfg.oracle_max_N, 4);
    const ModelInstance inst{m, N, 0.5};
    json blocks_doc = json::array();
    for (const auto& sec : blocks::sector_list(inst))
      blocks_doc.push_back(blocks::to_json(blocks::build_block(inst, sec.label)));
    const std::string bpath =
        (fs::path(cfg.out_dir) / ("blocks_" + to_string(m) + ".json")).string();
    std::ofstream out(bpath, std::ios::binary);
    out << blocks_doc.dump(2) << '\n';
    man.add_output(bpath);
  }

  json detail;
  detail["checked"] = results.size();
  detail["worst_deviation"] = worst;
  if (all_pass) {
    std::cout << "all blocks match oracle within " << tol << "\n";
    man.task_ok("oracle-check", detail);
  } else {
    man.task_failed("oracle-check",
                    "block spectra deviate from the dense oracle beyond 1e-9");
  }
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> subs = {
      "ced",         "gaps-xi",         "gaps-n",      "centrifugal",
      "otoc-scan",   "critical-energy", "oracle-check"};
  return subs;
}

RunConfig parse_config(const std::string& subcommand, const json& doc) {
  RunConfig cfg;
  cfg.subcommand = subcommand;
  cfg.raw = doc;
  if (std::find(subcommands().begin(), subcommands().end(), subcommand) ==
      subcommands().end())
    throw std::invalid_argument("unknown subcommand: " + subcommand);

  if (doc.contains("model")) cfg.model = parse_model(doc.at("model").get<std::string>());
  if (doc.contains("N")) cfg.N = int_field(doc.at("N"), "N");
  if (doc.contains("N_list"))
    for (const auto& v : doc.at("N_list")) cfg.N_list.push_back(int_field(v, "N_list"));
  if (doc.contains("xi")) {
    cfg.xi = num_field(doc.at("xi"), "xi");
    if (doc.at("xi").is_string()) cfg.xi_decimal = doc.at("xi").get<std::string>();
  }
  if (doc.contains("xi_grid")) cfg.xi_grid = grid_field(doc.at("xi_grid"), "xi_grid");
  if (doc.contains("sectors"))
    for (const auto& s : doc.at("sectors"))
      cfg.sectors.push_back(parse_sector(cfg.model, s.get<std::string>()));
  if (doc.contains("pairs")) {
    for (const auto& p : doc.at("pairs")) {
      analysis::PairSpec spec;
      spec.a = parse_sector(cfg.model, p.at("a").get<std::string>());
      spec.b = parse_sector(cfg.model, p.at("b").get<std::string>());
      spec.index = p.contains("index") ? int_field(p.at("index"), "pair index") : 0;
      cfg.pairs.push_back(spec);
    }
  }
  if (doc.contains("precision")) {
    const auto& p = doc.at("precision");
    const std::string mode = p.value("mode", "double");
    if (mode == "double") {
      cfg.precision = eig::PrecisionConfig::dbl();
    } else if (mode == "arbitrary") {
      cfg.precision = eig::PrecisionConfig::mp(
          p.contains("mantissa_bits") ? int_field(p.at("mantissa_bits"), "mantissa_bits")
                                      : 256);
    } else {
      throw std::invalid_argument("config: precision.mode must be double|arbitrary");
    }
    if (p.contains("eig_tol")) {
      const double tol = num_field(p.at("eig_tol"), "eig_tol");
      if (!(tol > 0.0 && tol < 1.0))
        throw std::invalid_argument("config: eig_tol must lie in (0, 1)");
      cfg.precision.eig_tol_exp2 = static_cast<int>(std::floor(std::log2(tol)));
    }
    cfg.precision.validate();
  }
  if (doc.contains("otoc")) {
    const auto& o = doc.at("otoc");
    if (o.contains("V")) {
      cfg.v_op = otoc::parse_otoc_op(o.at("V").get<std::string>());
      cfg.have_ops = true;
    }
    if (o.contains("W")) cfg.w_op = otoc::parse_otoc_op(o.at("W").get<std::string>());
    if (o.contains("T_list")) {
      for (const auto& t : o.at("T_list")) cfg.T_list.push_back(num_field(t, "T"));
      cfg.stationary = o.value("stationary", false);
    }
    if (o.contains("tol_deg")) cfg.tol_deg = num_field(o.at("tol_deg"), "tol_deg");
    if (!(cfg.tol_deg > 0.0))
      throw std::invalid_argument("config: tol_deg must be positive");
  }
  if (doc.contains("ells"))
    for (const auto& v : doc.at("ells")) cfg.ells.push_back(int_field(v, "ells"));
  if (doc.contains("oracle_max_N")) cfg.oracle_max_N = int_field(doc.at("oracle_max_N"), "oracle_max_N");
  if (doc.contains("oracle_max_N_ibm"))
    cfg.oracle_max_N_ibm = int_field(doc.at("oracle_max_N_ibm"), "oracle_max_N_ibm");
  else
    cfg.oracle_max_N_ibm = std::min(cfg.oracle_max_N, 4);
  if (doc.contains("oracle_xis")) cfg.oracle_xis = grid_field(doc.at("oracle_xis"), "oracle_xis");
  if (doc.contains("density_N_list"))
    for (const auto& v : doc.at("density_N_list"))
      cfg.density_N_list.push_back(int_field(v, "density_N_list"));
  if (doc.contains("out")) cfg.out_dir = doc.at("out").get<std::string>();
  if (doc.contains("plots")) cfg.plots = doc.at("plots").get<bool>();
  if (doc.contains("workers")) cfg.workers = int_field(doc.at("workers"), "workers");

  // ---- defaults and validation per subcommand ----
  const auto need_N = [&](int fallback) {
    if (cfg.N <= 0) cfg.N = fallback;
    if (cfg.N < 1) throw std::invalid_argument("config: N must be >= 1");
  };
  const auto need_xi = [&](double fallback) {
    if (cfg.xi < 0.0) cfg.xi = fallback;
    if (!(cfg.xi >= 0.0 && cfg.xi <= 1.0))
      throw std::invalid_argument("config: xi must lie in [0, 1]");
  };
  const auto default_grid = [&]() {
    if (cfg.xi_grid.empty())
      for (double x = 0.0; x <= 1.0 + 1e-12; x += 0.005)
        cfg.xi_grid.push_back(std::min(x, 1.0));
  };

  if (subcommand == "ced") {
    need_N(50);
    default_grid();
    if (cfg.sectors.empty())
      cfg.sectors = {ground_sector(cfg.model), default_partner(cfg.model)};
  } else if (subcommand == "gaps-xi") {
    need_N(50);
    default_grid();
    if (cfg.pairs.empty())
      for (int i = 0; i < 4; ++i)
        cfg.pairs.push_back(
            {ground_sector(cfg.model), default_partner(cfg.model), i});
  } else if (subcommand == "gaps-n") {
    need_xi(0.5);
    if (cfg.pairs.empty())
      cfg.pairs.push_back({ground_sector(cfg.model), default_partner(cfg.model), 0});
    if (cfg.N_list.empty()) {
      const int lo = 20, hi = cfg.model == Model::LMG ? 120 : 400;
      const int step = cfg.model == Model::LMG ? 10 : 20;
      for (int n = lo; n <= hi; n += step) cfg.N_list.push_back(n);
    }
    if (!doc.contains("precision") && cfg.model == Model::LMG)
      cfg.precision = eig::PrecisionConfig::mp(256);
  } else if (subcommand == "centrifugal") {
    need_N(50);
    default_grid();
    if (cfg.ells.empty()) cfg.ells = {1, 14, 30};
    cfg.model = Model::VM2D;
  } else if (subcommand == "otoc-scan") {
    need_N(300);
    need_xi(0.6);
    if (!cfg.have_ops) {
      if (cfg.model == Model::LMG) {
        cfg.v_op = otoc::OtocOp::Jx;
        cfg.w_op = otoc::OtocOp::Jx;
      } else if (cfg.model == Model::VM2D) {
        cfg.v_op = otoc::OtocOp::Dminus;
        cfg.w_op = otoc::OtocOp::Dplus;
      }
    }
    if (cfg.T_list.empty()) cfg.stationary = true;
  } else if (subcommand == "critical-energy") {
    need_xi(0.6);
  }
  return cfg;
}

int run(const RunConfig& cfg) {
  int workers = cfg.workers;
  if (workers <= 0) {
    if (const char* env = std::getenv("ESQPT_LAB_WORKERS")) workers = std::atoi(env);
  }
  if (workers > 0) omp_set_num_threads(workers);

  fs::create_directories(cfg.out_dir);
  Manifest man(cfg);
  man.doc["workers"] = workers > 0 ? workers : omp_get_max_threads();

  try {
    if (cfg.subcommand == "ced")
      run_ced(cfg, man);
    else if (cfg.subcommand == "gaps-xi")
      run_gaps_xi(cfg, man);
    else if (cfg.subcommand == "gaps-n")
      run_gaps_n(cfg, man);
    else if (cfg.subcommand == "centrifugal")
      run_centrifugal(cfg, man);
    else if (cfg.subcommand == "otoc-scan")
      run_otoc_scan(cfg, man);
    else if (cfg.subcommand == "critical-energy")
      run_critical_energy(cfg, man);
    else if (cfg.subcommand == "oracle-check")
      run_oracle_check(cfg, man);
    else
      throw std::invalid_argument("unknown subcommand: " + cfg.subcommand);
  } catch (const std::exception& e) {
    man.task_failed(cfg.subcommand, e.what());
  }
  return man.finish(cfg.out_dir);
}

}  // namespace esqpt::cli
