// esqpt_lab.cpp — batch CLI over the esqpt library
#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>

#include "esqpt/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"esqpt-lab: spectra, degeneracy scaling, and correlator scans "
               "for two-level boson models"};
  app.set_version_flag("--version", esqpt::cli::kVersion);
  app.require_subcommand(1);

  struct Args {
    std::string config;
    std::string out;
    bool plots = false;
    int workers = 0;
  };
  std::map<std::string, Args> args;

  for (const auto& name : esqpt::cli::subcommands()) {
    auto* sub = app.add_subcommand(name);
    auto& a = args[name];
    sub->add_option("--config", a.config, "JSON run configuration");
    sub->add_option("--out", a.out, "output directory (overrides config)");
    sub->add_flag("--plots", a.plots, "emit SVG figures");
    sub->add_option("--workers", a.workers, "worker pool size")
        ->envname("ESQPT_LAB_WORKERS");
  }

  CLI11_PARSE(app, argc, argv);

  const std::string name = app.get_subcommands().front()->get_name();
  const Args& a = args[name];

  nlohmann::json doc = nlohmann::json::object();
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) {
      std::cerr << R"({"error":"cannot open config )" << a.config << "\"}\n";
      return 2;
    }
    try {
      in >> doc;
    } catch (const std::exception& e) {
      std::cerr << R"({"error":"config parse failure: )" << e.what() << "\"}\n";
      return 2;
    }
  }
  if (!a.out.empty()) doc["out"] = a.out;
  if (a.plots) doc["plots"] = true;
  if (a.workers > 0) doc["workers"] = a.workers;

  try {
    const auto cfg = esqpt::cli::parse_config(name, doc);
    return esqpt::cli::run(cfg);
  } catch (const std::exception& e) {
    std::cerr << R"({"error":")" << e.what() << "\"}\n";
    return 2;
  }
}
