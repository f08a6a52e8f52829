/// @file test_harness.cpp
/// @brief Config parsing, slope fits, CSV output, sweeps and suite dispatch.

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "gqg/config.hpp"
#include "gqg/errors.hpp"
#include "gqg/invariants.hpp"
#include "gqg/report.hpp"
#include "gqg/sweep.hpp"

using namespace gqg;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / name;
  fs::remove_all(d);
  return d;
}

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.n = 16;
  c.T = 0.02;
  c.dt = 5e-3;
  c.samples = 2;
  c.eps_sweep = {0.1, 0.05};
  c.osc_beta = 0.05;
  return c;
}

MetricsRow row(double eps, double t) { return {eps, t, 1, 2, 3, 4, 5, 6, 7, 8, 9}; }
}  // namespace

TEST(Config, DefaultsAndOverrides) {
  const ExperimentConfig c = parse_config_string(
      "# comment\n"
      "grid.n = 16\n"
      "sweep.eps = 0.1, 0.01   # trailing comment\n"
      "params.nu_prime = 0.5\n"
      "time.dt_policy = proportional\n"
      "pe.scheme = if_heun\n"
      "init.patch.center = 3, 3.1, 3.2\n"
      "run.seed = 99\n");
  EXPECT_EQ(c.n, 16);
  ASSERT_EQ(c.eps_sweep.size(), 2u);
  EXPECT_DOUBLE_EQ(c.eps_sweep[1], 0.01);
  EXPECT_DOUBLE_EQ(c.nu_prime, 0.5);
  EXPECT_DOUBLE_EQ(c.nu, 1.0);
  EXPECT_EQ(c.dt_policy, DtPolicy::proportional);
  EXPECT_EQ(c.scheme, PeScheme::if_heun);
  EXPECT_DOUBLE_EQ(c.patch.center[2], 3.2);
  EXPECT_EQ(c.seed, 99u);
}

TEST(Config, CanonicalListingRoundTrips) {
  ExperimentConfig c = small_config();
  c.nu_prime = 0.3;
  c.envelope_width = 0.7;
  const ExperimentConfig d = parse_config_string(to_string(c));
  EXPECT_EQ(to_string(d), to_string(c));
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config_string("grid.wobble = 1\n"), ConfigError);
  EXPECT_THROW(parse_config_string("grid.n = 16\ngrid.n = 32\n"), ConfigError);
  EXPECT_THROW(parse_config_string("grid.n 16\n"), ConfigError);
  EXPECT_THROW(parse_config_string("grid.n = 7\n"), ConfigError);
  EXPECT_THROW(parse_config_string("params.F = 2\n"), ConfigError);
  EXPECT_THROW(parse_config_string("time.dt_policy = sometimes\n"), ConfigError);
  EXPECT_THROW(parse_config_string("sweep.eps = 0.1, x\n"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/file.cfg"), ConfigError);
  try {
    parse_config_string("grid.n = 16\n\nbogus = 1\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Fit, ExactPowerLawAndInterval) {
  const std::vector<double> x{1e-1, 5e-2, 2.5e-2, 1.25e-2};
  std::vector<double> y;
  for (double e : x) y.push_back(3.0 * e * (1.0 + 0.01 * std::sin(100 * e)));
  const SlopeFit f = fit_loglog("q", x, y);
  EXPECT_EQ(f.status, "ok");
  EXPECT_EQ(f.points, 4);
  EXPECT_NEAR(f.slope, 1.0, 0.02);
  EXPECT_LT(f.ci_low, f.slope);
  EXPECT_GT(f.ci_high, f.slope);
  // independent check of the interval: t_{0.975, 2} = 4.302652729911275
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    mx += std::log(x[i]) / 4;
    my += std::log(y[i]) / 4;
  }
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    sxx += std::pow(std::log(x[i]) - mx, 2);
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
  }
  const double b = sxy / sxx, a = my - b * mx;
  double sse = 0;
  for (std::size_t i = 0; i < 4; ++i) sse += std::pow(std::log(y[i]) - a - b * std::log(x[i]), 2);
  const double half = 4.302652729911275 * std::sqrt(sse / 2 / sxx);
  EXPECT_NEAR(f.slope, b, 1e-12);
  EXPECT_NEAR(f.ci_high - f.slope, half, 1e-9);
}

TEST(Fit, DegenerateCases) {
  EXPECT_EQ(fit_loglog("q", {0.1}, {1.0}).status, "insufficient points");
  const SlopeFit two = fit_loglog("q", {0.1, 0.01}, {1.0, 0.1});
  EXPECT_NEAR(two.slope, 1.0, 1e-12);
  EXPECT_TRUE(std::isnan(two.ci_low));
}

TEST(Report, SingleRowGivesTwoFiles) {
  const fs::path d = fresh_dir("gqg_report_single");
  const std::vector<std::vector<MetricsRow>> series{{row(0.1, 0.0)}};
  const auto paths = emit_report(d.string(), series, fit_series(series));
  EXPECT_EQ(paths.size(), 2u);
  const std::string summary = slurp(d / "summary.csv");
  EXPECT_NE(summary.find("insufficient points"), std::string::npos);
  const std::string metrics = slurp(d / "metrics_0.csv");
  EXPECT_EQ(metrics.substr(0, metrics.find("\r\n")),
            "eps,t,U_L2,gradU_L2,Uosc_Linf,Uosc_L4Linf_running,Omega_L2,Omega_Linf,UQG_err_L2,V_eps,log_ratio");
  EXPECT_THROW(emit_report(d.string(), {}, {}), std::invalid_argument);
  fs::remove_all(d);
}

TEST(Report, ByteIdenticalRerunAndRoundTrip) {
  const fs::path a = fresh_dir("gqg_report_a"), b = fresh_dir("gqg_report_b");
  std::vector<std::vector<MetricsRow>> series;
  for (double e : {0.1, 0.05, 0.025, 0.0125}) series.push_back({row(e, 0.0), row(e, 0.1 + 1.0 / 3.0)});
  emit_report(a.string(), series, fit_series(series));
  emit_report(b.string(), series, fit_series(series));
  for (const char* f : {"summary.csv", "metrics_0.csv", "metrics_3.csv"}) EXPECT_EQ(slurp(a / f), slurp(b / f));
  std::ifstream is(a / "metrics_1.csv", std::ios::binary);
  const auto rows = read_metrics_csv(is);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].t, 0.1 + 1.0 / 3.0);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Report, UnwritableDirectory) {
  const std::vector<std::vector<MetricsRow>> series{{row(0.1, 0.0)}};
  EXPECT_THROW(emit_report("/proc/gqg_cannot_write_here", series, {}), std::runtime_error);
}

TEST(Csv, Rfc4180Quoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
}

TEST(Sweep, StepCountPolicies) {
  ExperimentConfig c = small_config();
  EXPECT_EQ(step_count(c, 0.1) % c.samples, 0);
  EXPECT_GE(step_count(c, 0.1) * c.dt, c.T * (1 - 1e-12));
  c.dt_policy = DtPolicy::proportional;
  c.dt_factor = 0.1;
  EXPECT_GT(step_count(c, 0.01), step_count(c, 0.1));
}

TEST(Sweep, LargeEpsUnpenalizedSmokeRun) {
  ExperimentConfig c = small_config();
  c.eps_sweep = {1e6};
  c.penalized = false;
  const SweepReport r = run_sweep(c);
  ASSERT_EQ(r.runs.size(), 1u);
  const TrajectoryResult& t = r.runs[0];
  EXPECT_EQ(t.status, "ok");
  ASSERT_EQ(t.rows.size(), static_cast<std::size_t>(c.samples + 1));
  for (const MetricsRow& m : t.rows) {
    for (double v : {m.U_L2, m.gradU_L2, m.Uosc_Linf, m.Uosc_L4Linf_running, m.Omega_L2, m.Omega_Linf,
                     m.UQG_err_L2, m.V_eps, m.log_ratio}) {
      EXPECT_TRUE(std::isfinite(v));
    }
  }
  for (std::size_t i = 1; i < t.rows.size(); ++i) EXPECT_GE(t.rows[i].V_eps, t.rows[i - 1].V_eps);
  const fs::path d = fresh_dir("gqg_sweep_smoke");
  const auto paths = write_sweep(d.string(), r);
  EXPECT_TRUE(fs::exists(d / "summary.csv"));
  EXPECT_TRUE(fs::exists(d / "runs.csv"));
  EXPECT_GE(paths.size(), 4u);
  fs::remove_all(d);
}

TEST(Sweep, RegimeViolationIsFlaggedNotFatal) {
  ExperimentConfig c = small_config();
  c.eps_sweep = {0.1};
  c.regime_check = true;
  c.m = 0.5;
  c.M = 0.3;
  const SweepReport r = run_sweep(c);
  EXPECT_FALSE(r.runs[0].regime_ok);
  EXPECT_FALSE(r.runs[0].regime_message.empty());
}

TEST(Sweep, SolverAbortIsRecorded) {
  ExperimentConfig c = small_config();
  c.eps_sweep = {0.1, 0.05};
  c.osc_amplitude = 1e4;
  c.dt = 0.01;
  const SweepReport r = run_sweep(c);
  ASSERT_EQ(r.runs.size(), 2u);
  for (const TrajectoryResult& t : r.runs) EXPECT_NE(t.status, "ok");
}

TEST(Sweep, DeterministicAcrossThreadCounts) {
  ExperimentConfig c = small_config();
  const fs::path a = fresh_dir("gqg_det_a"), b = fresh_dir("gqg_det_b");
  write_sweep(a.string(), run_sweep(c));
  c.threads = 2;
  write_sweep(b.string(), run_sweep(c));
  for (const auto& e : fs::directory_iterator(a)) {
    EXPECT_EQ(slurp(e.path()), slurp(b / e.path().filename())) << e.path().filename();
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Invariants, DispatchAndErrors) {
  const ExperimentConfig c;
  EXPECT_THROW(run_invariants(c, {}), std::invalid_argument);
  EXPECT_THROW(run_invariants(c, {"symbol", "nonsense"}), std::invalid_argument);
  EXPECT_EQ(suite_names().size(), 11u);
  const auto res = run_invariants(c, {"decomposition"});
  ASSERT_EQ(res.size(), 1u);
  EXPECT_TRUE(res[0].pass()) << res[0].summary();
  std::ostringstream os;
  write_invariants_csv(os, res);
  EXPECT_EQ(os.str().substr(0, os.str().find("\r\n")), "suite,check,measured,relation,threshold,pass");
}

TEST(Invariants, EigenSuiteSlopes) {
  const auto res = run_invariants(ExperimentConfig{}, {"eigen"});
  EXPECT_TRUE(res[0].pass()) << res[0].summary();
}
