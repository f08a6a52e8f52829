/// @file gqg.cpp
/// @brief Config-driven runner: single trajectories, eps sweeps, invariant
/// suites and report regeneration.
///
/// Exit codes: 0 pass, 1 assertion or solver failure, 2 configuration error.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "gqg/config.hpp"
#include "gqg/errors.hpp"
#include "gqg/invariants.hpp"
#include "gqg/report.hpp"
#include "gqg/sweep.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kConfigError = 2;

struct Common {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "key = value config file (defaults when omitted)");
  sub->add_option("--out", c.out, "output directory (overrides output.dir)");
  sub->add_option("--seed", c.seed, "master seed (overrides run.seed)");
  sub->add_option("--threads", c.threads, "sweep workers (overrides run.threads)")->check(CLI::PositiveNumber);
}

gqg::ExperimentConfig resolve(const Common& c) {
  gqg::ExperimentConfig cfg = c.config.empty() ? gqg::ExperimentConfig{} : gqg::load_config(c.config);
  if (!c.out.empty()) cfg.out_dir = c.out;
  if (c.seed) cfg.seed = *c.seed;
  if (c.threads) cfg.threads = *c.threads;
  gqg::validate(cfg);
  return cfg;
}

void print_fits(const std::vector<gqg::SlopeFit>& fits) {
  for (const gqg::SlopeFit& f : fits) {
    std::cout << "fit " << f.name << ": slope " << gqg::format_real(f.slope) << " [" << gqg::format_real(f.ci_low)
              << ", " << gqg::format_real(f.ci_high) << "] over " << f.points << " points (" << f.status << ")\n";
  }
}

int run_and_write(const gqg::ExperimentConfig& cfg) {
  const gqg::SweepReport rep = gqg::run_sweep(cfg);
  gqg::write_sweep(cfg.out_dir, rep);
  int code = kPass;
  for (const gqg::TrajectoryResult& t : rep.runs) {
    std::cout << "eps " << gqg::format_real(t.eps) << ": " << t.steps << " steps, status " << t.status
              << ", sup_t QG error " << gqg::format_real(t.sup_qg_err);
    if (!t.regime_ok) std::cout << ", regime flagged: " << t.regime_message;
    std::cout << '\n';
    if (t.status != "ok") code = kFail;
  }
  print_fits(rep.fits);
  std::cout << "wrote " << cfg.out_dir << '\n';
  return code;
}

int cmd_verify(const gqg::ExperimentConfig& cfg, const std::vector<std::string>& suites) {
  const std::vector<std::string> names = suites.empty() ? gqg::suite_names() : suites;
  const std::vector<gqg::SuiteResult> results = gqg::run_invariants(cfg, names);
  std::filesystem::create_directories(cfg.out_dir);
  const std::string path = (std::filesystem::path(cfg.out_dir) / "invariants.csv").string();
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + path);
  gqg::write_invariants_csv(os, results);
  bool all = true;
  for (const gqg::SuiteResult& r : results) {
    std::cout << (r.pass() ? "PASS " : "FAIL ") << r.suite << ": " << r.summary() << '\n';
    all = all && r.pass();
  }
  return all ? kPass : kFail;
}

/// Rebuilds summary.csv from the metrics_<i>.csv files of a previous run.
int cmd_report(const std::string& dir) {
  const std::regex name(R"(metrics_(\d+)\.csv)");
  std::vector<std::pair<int, std::filesystem::path>> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    std::smatch m;
    const std::string fn = e.path().filename().string();
    if (std::regex_match(fn, m, name)) files.emplace_back(std::stoi(m[1]), e.path());
  }
  if (files.empty()) throw std::runtime_error("no metrics_<i>.csv files in " + dir);
  std::sort(files.begin(), files.end());
  std::vector<std::vector<gqg::MetricsRow>> series;
  for (const auto& [i, p] : files) {
    std::ifstream is(p, std::ios::binary);
    series.push_back(gqg::read_metrics_csv(is));
  }
  const std::vector<gqg::SlopeFit> fits = gqg::fit_series(series);
  gqg::emit_report(dir, series, fits);
  print_fits(fits);
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gqg: primitive-equation to quasi-geostrophic convergence experiments"};
  app.require_subcommand(1);
  Common common;
  std::vector<std::string> suites;
  std::optional<double> eps;

  CLI::App* simulate = app.add_subcommand("simulate", "one trajectory at the first (or given) eps");
  add_common(simulate, common);
  simulate->add_option("--eps", eps, "Rossby number for this run");
  CLI::App* sweep = app.add_subcommand("sweep", "every eps of sweep.eps, with slope fits");
  add_common(sweep, common);
  CLI::App* verify = app.add_subcommand("verify", "invariant suites; nonzero exit on any failed check");
  add_common(verify, common);
  verify->add_option("--suite", suites, "comma-separated suite names (default: all)")->delimiter(',');
  CLI::App* report = app.add_subcommand("report", "refit summary.csv from metrics files in --out");
  add_common(report, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    gqg::ExperimentConfig cfg = resolve(common);
    if (*simulate) {
      cfg.eps_sweep = {eps.value_or(cfg.eps_sweep.front())};
      gqg::validate(cfg);
      return run_and_write(cfg);
    }
    if (*sweep) return run_and_write(cfg);
    if (*verify) return cmd_verify(cfg, suites);
    return cmd_report(cfg.out_dir);
  } catch (const gqg::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << '\n';
    return kFail;
  }
}
