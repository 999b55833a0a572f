// nkcheck: run verification suites on a model and write JSONL reports.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "nkg/check.hpp"
#include "nkg/errors.hpp"
#include "nkg/report.hpp"

namespace {

// Pull "--tol.<id>=<v>" and "--tol.<id> <v>" out of argv; CLI11 does not take
// dynamically named options.
std::vector<std::string> extract_tolerances(int argc, char** argv, std::map<std::string, double>& tols) {
  std::vector<std::string> rest;
  for (int i = 0; i < argc; ++i) {
    std::string a = argv[i];
    if (i > 0 && a.rfind("--tol.", 0) == 0) {
      std::string key = a.substr(6), val;
      const auto eq = key.find('=');
      if (eq != std::string::npos) {
        val = key.substr(eq + 1);
        key = key.substr(0, eq);
      } else {
        if (i + 1 >= argc) throw nkg::ConfigError("missing value for --tol." + key);
        val = argv[++i];
      }
      if (key.empty()) throw nkg::ConfigError("empty check id in --tol.");
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(val, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != val.size()) throw nkg::ConfigError("bad tolerance value '" + val + "' for " + key);
      tols[key] = v;
      continue;
    }
    rest.push_back(a);
  }
  return rest;
}

}  // namespace

int main(int argc, char** argv) {
  nkg::RunConfig cfg;
  std::vector<std::string> args;
  try {
    args = extract_tolerances(argc, argv, cfg.tolerances);
  } catch (const nkg::ConfigError& e) {
    std::cerr << "nkcheck: " << e.what() << '\n';
    return 2;
  }

  CLI::App app{"Verify nearly Kaehler identities on chart models"};
  std::string deriv = "exact", out;
  bool list = false, quiet = false;
  std::vector<std::string> suites;
  app.add_option("--model", cfg.model, "model: s3s3 | s6 | s2s2");
  app.add_option("--suite", suites, "suites: gray | nk-core | reduction | lie | base | canonical | ansatz | all")
      ->delimiter(',');
  app.add_option("--samples", cfg.samples, "sample points per check")->capture_default_str();
  app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  app.add_option("--deriv-mode", deriv, "exact | differences")->capture_default_str();
  app.add_option("--out", out, "report file ('-' for stdout); default $NKG_REPORT_DIR/<model>-<seed>.jsonl");
  app.add_flag("--list-checks", list, "list registered checks and exit");
  app.add_flag("--quiet", quiet, "no per-check summary on stderr");
  app.footer("Tolerance overrides: --tol.<check-id>=<value>");

  std::vector<const char*> cargs;
  for (const auto& a : args) cargs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (list) {
    for (const auto& d : nkg::check_registry()) {
      std::string models;
      for (const auto& m : d.models) models += (models.empty() ? "" : ",") + m;
      std::cout << d.id << '\t' << d.suite << '\t' << models << '\t' << d.tolerance
                << (d.expected_fail_models.empty() ? "" : "\texpected-fail") << '\t' << d.description << '\n';
    }
    return 0;
  }

  std::vector<nkg::CheckReport> reports;
  std::ofstream file;
  std::ostream* os = &std::cout;
  try {
    if (cfg.model.empty()) throw nkg::ConfigError("--model is required");
    if (!suites.empty()) cfg.suites = suites;
    cfg.engine.mode = nkg::parse_derivative_mode(deriv);
    nkg::select_checks(cfg);  // validate before any work

    if (out.empty()) {
      if (const char* dir = std::getenv("NKG_REPORT_DIR"); dir && *dir) {
        std::filesystem::create_directories(dir);
        out = (std::filesystem::path(dir) / (cfg.model + "-" + std::to_string(cfg.seed) + ".jsonl")).string();
      } else {
        out = "-";
      }
    }
    if (out != "-") {
      file.open(out);
      if (!file) throw nkg::ConfigError("cannot write report to '" + out + "'");
      os = &file;
    }
    reports = nkg::run(cfg);
  } catch (const nkg::ConfigError& e) {
    std::cerr << "nkcheck: " << e.what() << '\n';
    return 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "nkcheck: " << e.what() << '\n';
    return 2;
  }

  nkg::write_reports(*os, reports, deriv);
  os->flush();
  bool ok = true;
  for (const auto& r : reports) {
    ok = ok && r.satisfied();
    if (!quiet) std::cerr << nkg::summary_line(r) << '\n';
  }
  return ok ? 0 : 1;
}
