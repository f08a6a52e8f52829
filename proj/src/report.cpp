#include "gqg/report.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>
#include <ostream>
#include <stdexcept>

namespace gqg {

const std::vector<std::string>& metrics_columns() {
  static const std::vector<std::string> cols = {
      "eps",      "t",          "U_L2",        "gradU_L2", "Uosc_Linf", "Uosc_L4Linf_running",
      "Omega_L2", "Omega_Linf", "UQG_err_L2",  "V_eps",    "log_ratio"};
  return cols;
}

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

SlopeFit fit_loglog(const std::string& name, const std::vector<double>& x, const std::vector<double>& y) {
  SlopeFit f;
  f.name = name;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(x[i]) && std::isfinite(y[i])) {
      lx.push_back(std::log(x[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  const std::size_t n = lx.size();
  f.points = static_cast<int>(n);
  const double nan = std::nan("");
  if (n < 2) {
    f.slope = f.intercept = f.ci_low = f.ci_high = f.residual_rms = nan;
    f.status = "insufficient points";
    return f;
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) {
    f.slope = f.intercept = f.ci_low = f.ci_high = f.residual_rms = nan;
    f.status = "insufficient points";
    return f;
  }
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - (f.intercept + f.slope * lx[i]);
    ssr += r * r;
  }
  f.residual_rms = std::sqrt(ssr / static_cast<double>(n));
  if (n < 3) {
    f.ci_low = f.ci_high = nan;
    f.status = "ok";
    return f;
  }
  const double dof = static_cast<double>(n - 2);
  const double se = std::sqrt(ssr / dof / sxx);
  const boost::math::students_t dist(dof);
  const double q = boost::math::quantile(boost::math::complement(dist, 0.025));
  f.ci_low = f.slope - q * se;
  f.ci_high = f.slope + q * se;
  f.status = "ok";
  return f;
}

void write_metrics_csv(std::ostream& os, const std::vector<MetricsRow>& rows) {
  const auto& cols = metrics_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << csv_field(cols[i]);
  os << "\r\n";
  for (const MetricsRow& r : rows) {
    const double v[] = {r.eps,      r.t,          r.U_L2,       r.gradU_L2, r.Uosc_Linf, r.Uosc_L4Linf_running,
                        r.Omega_L2, r.Omega_Linf, r.UQG_err_L2, r.V_eps,    r.log_ratio};
    for (std::size_t i = 0; i < std::size(v); ++i) os << (i ? "," : "") << format_real(v[i]);
    os << "\r\n";
  }
}

void write_summary_csv(std::ostream& os, const std::vector<SlopeFit>& fits) {
  os << "quantity,points,slope,intercept,ci95_low,ci95_high,residual_rms,status\r\n";
  for (const SlopeFit& f : fits) {
    os << csv_field(f.name) << ',' << f.points << ',' << format_real(f.slope) << ',' << format_real(f.intercept)
       << ',' << format_real(f.ci_low) << ',' << format_real(f.ci_high) << ',' << format_real(f.residual_rms) << ','
       << csv_field(f.status) << "\r\n";
  }
}

std::vector<MetricsRow> read_metrics_csv(std::istream& is) {
  auto strip = [](std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
  };
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty metrics file");
  strip(line);
  std::string header;
  const auto& cols = metrics_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) header += (i ? "," : "") + csv_field(cols[i]);
  if (line != header) throw std::runtime_error("unexpected metrics header: " + line);
  std::vector<MetricsRow> rows;
  while (std::getline(is, line)) {
    strip(line);
    if (line.empty()) continue;
    std::vector<double> v;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      char* end = nullptr;
      v.push_back(std::strtod(cell.c_str(), &end));
      if (end == cell.c_str() || *end != '\0') throw std::runtime_error("malformed metrics cell: " + cell);
    }
    if (v.size() != cols.size()) throw std::runtime_error("malformed metrics row: " + line);
    rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9], v[10]});
  }
  return rows;
}

std::vector<SlopeFit> fit_series(const std::vector<std::vector<MetricsRow>>& series) {
  std::vector<double> eps, err, osc;
  for (const auto& rows : series) {
    if (rows.empty()) continue;
    double sup = 0.0;
    for (const MetricsRow& r : rows) sup = std::max(sup, r.UQG_err_L2);
    eps.push_back(rows.front().eps);
    err.push_back(sup);
    osc.push_back(rows.back().Uosc_L4Linf_running);
  }
  return {fit_loglog("sup_t UQG_err_L2", eps, err), fit_loglog("Uosc_L4Linf", eps, osc)};
}

std::vector<std::string> emit_report(const std::string& dir, const std::vector<std::vector<MetricsRow>>& series,
                                     const std::vector<SlopeFit>& fits) {
  if (series.empty()) throw std::invalid_argument("report needs at least one trajectory");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::vector<std::string> paths;
  auto open = [&](const std::string& name) {
    const std::string path = (std::filesystem::path(dir) / name).string();
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write report file " + path);
    paths.push_back(path);
    return os;
  };
  for (std::size_t i = 0; i < series.size(); ++i) {
    std::ofstream os = open("metrics_" + std::to_string(i) + ".csv");
    write_metrics_csv(os, series[i]);
  }
  std::ofstream os = open("summary.csv");
  write_summary_csv(os, fits);
  return paths;
}

}  // namespace gqg
