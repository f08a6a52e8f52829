/// @file report.hpp
/// @brief Metrics rows, log-log slope fits and RFC-4180 CSV output.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gqg {

/// One sample of a primitive-equation trajectory.
struct MetricsRow {
  double eps;
  double t;
  double U_L2;
  double gradU_L2;
  double Uosc_Linf;
  double Uosc_L4Linf_running;  ///< (int_0^t ||U_osc||_inf^4)^{1/4}
  double Omega_L2;
  double Omega_Linf;
  double UQG_err_L2;  ///< ||Q U_eps - U_QG||_{L^2}
  double V_eps;       ///< int_0^t ||grad U||_inf
  double log_ratio;   ///< ||grad U||_inf / (||Omega||_2 + ||Omega||_inf log(e + N/||Omega||_inf))
};

/// Column names in field order.
const std::vector<std::string>& metrics_columns();

/// Ordinary least squares of log y against log x with a 95% Student-t
/// interval on the slope. status is "ok", or "insufficient points" for
/// fewer than two (interval needs three) usable points.
struct SlopeFit {
  std::string name;
  double slope = 0.0;
  double intercept = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double residual_rms = 0.0;
  int points = 0;
  std::string status;
};
SlopeFit fit_loglog(const std::string& name, const std::vector<double>& x, const std::vector<double>& y);

/// Round-trip decimal text of a double ("%.17g").
std::string format_real(double v);
/// RFC-4180 field quoting.
std::string csv_field(const std::string& s);

void write_metrics_csv(std::ostream& os, const std::vector<MetricsRow>& rows);
void write_summary_csv(std::ostream& os, const std::vector<SlopeFit>& fits);

/// Parses a file written by write_metrics_csv. Throws std::runtime_error on a
/// header mismatch or a malformed row.
std::vector<MetricsRow> read_metrics_csv(std::istream& is);

/// Fits of sup_t UQG_err_L2 and of the final running L^4_T L^inf norm
/// against eps, one point per trajectory.
std::vector<SlopeFit> fit_series(const std::vector<std::vector<MetricsRow>>& series);

/// One metrics CSV per trajectory (metrics_<i>.csv) and summary.csv.
/// Returns the written paths. Throws std::invalid_argument for an empty
/// series and std::runtime_error for an unwritable directory.
std::vector<std::string> emit_report(const std::string& dir, const std::vector<std::vector<MetricsRow>>& series,
                                     const std::vector<SlopeFit>& fits);

}  // namespace gqg
