/// @file sweep.hpp
/// @brief Epsilon sweeps: matched primitive-equation and quasi-geostrophic
/// runs, per-sample metrics and convergence fits.
#pragma once

#include <string>
#include <vector>

#include "gqg/config.hpp"
#include "gqg/report.hpp"

namespace gqg {

/// Initial data for one eps: U_{0,eps} = chi(eps^beta|D|) U_{0,QG} + U_{0,osc}
/// and the unregularized limit data U_{0,QG}.
struct InitialData {
  Field4 U0_eps;
  Field4 U0_qg;
  Field omega0;  ///< potential vorticity of U_{0,QG}
};
InitialData build_initial_data(const ExperimentConfig& cfg, double eps);

/// Number of steps of size T/N used for eps; N is a multiple of cfg.samples.
int step_count(const ExperimentConfig& cfg, double eps);

struct TrajectoryResult {
  double eps = 0.0;
  double dt = 0.0;
  int steps = 0;
  std::string status = "ok";  ///< "ok" or the abort diagnostic
  bool regime_ok = true;
  std::string regime_message;
  std::vector<MetricsRow> rows;
  double sup_qg_err = 0.0;
  double osc_l4linf = 0.0;
  double hdot1 = 0.0;
  double h6 = 0.0;
  std::vector<Field> final_state;  ///< spectral components of U at T (empty on abort)
};

struct SweepReport {
  std::vector<TrajectoryResult> runs;
  std::vector<SlopeFit> fits;
};

/// Samples of the QG reference potential vorticity at t_j = j T / samples,
/// integrated at the finest step of the sweep.
std::vector<Field> qg_reference(const ExperimentConfig& cfg, const Field& omega0);

/// One eps member against a precomputed reference.
TrajectoryResult run_trajectory(const ExperimentConfig& cfg, double eps, const std::vector<Field>& reference);

/// Every eps of the sweep (cfg.threads workers) plus log-log fits of
/// sup_t ||U_eps,QG - U_QG||_{L^2}, ||U_eps,osc||_{L^4_T L^inf} and the
/// initial-data norms against eps. Solver aborts are recorded per member.
SweepReport run_sweep(const ExperimentConfig& cfg);

/// metrics_<i>.csv, summary.csv, runs.csv and final-state dumps
/// final_<i>_<c>.bin. Returns the written paths.
std::vector<std::string> write_sweep(const std::string& dir, const SweepReport& r);

}  // namespace gqg
