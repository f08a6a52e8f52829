#include "gqg/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <set>
#include <sstream>

#include "gqg/errors.hpp"
#include "gqg/grid.hpp"
#include "gqg/wave_matrix.hpp"

namespace gqg {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double to_real(const std::string& v) {
  std::size_t pos = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("expected a real number, got '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError("expected a real number, got '" + v + "'");
  return x;
}

long long to_integer(const std::string& v) {
  std::size_t pos = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &pos);
  } catch (const std::exception&) {
    throw ConfigError("expected an integer, got '" + v + "'");
  }
  if (pos != v.size()) throw ConfigError("expected an integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError("expected true or false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_real(trim(item)));
  if (out.empty()) throw ConfigError("expected a comma-separated list");
  return out;
}

Vec3 to_vec3(const std::string& v) {
  const auto l = to_list(v);
  if (l.size() != 3) throw ConfigError("expected three comma-separated reals, got '" + v + "'");
  return {l[0], l[1], l[2]};
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt(const Vec3& v) { return fmt(v[0]) + ", " + fmt(v[1]) + ", " + fmt(v[2]); }

using Setter = std::function<void(ExperimentConfig&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"grid.n", [](ExperimentConfig& c, const std::string& v) { c.n = static_cast<int>(to_integer(v)); }},
      {"grid.L", [](ExperimentConfig& c, const std::string& v) { c.L = to_real(v); }},
      {"params.nu", [](ExperimentConfig& c, const std::string& v) { c.nu = to_real(v); }},
      {"params.nu_prime", [](ExperimentConfig& c, const std::string& v) { c.nu_prime = to_real(v); }},
      {"params.F", [](ExperimentConfig& c, const std::string& v) { c.F = to_real(v); }},
      {"sweep.eps", [](ExperimentConfig& c, const std::string& v) { c.eps_sweep = to_list(v); }},
      {"exponents.beta", [](ExperimentConfig& c, const std::string& v) { c.beta = to_real(v); }},
      {"exponents.osc_beta", [](ExperimentConfig& c, const std::string& v) { c.osc_beta = to_real(v); }},
      {"exponents.m", [](ExperimentConfig& c, const std::string& v) { c.m = to_real(v); }},
      {"exponents.M", [](ExperimentConfig& c, const std::string& v) { c.M = to_real(v); }},
      {"regime.check", [](ExperimentConfig& c, const std::string& v) { c.regime_check = to_bool(v); }},
      {"time.T", [](ExperimentConfig& c, const std::string& v) { c.T = to_real(v); }},
      {"time.dt_policy",
       [](ExperimentConfig& c, const std::string& v) {
         if (v == "fixed") {
           c.dt_policy = DtPolicy::fixed;
         } else if (v == "proportional") {
           c.dt_policy = DtPolicy::proportional;
         } else {
           throw ConfigError("time.dt_policy must be fixed or proportional");
         }
       }},
      {"time.dt", [](ExperimentConfig& c, const std::string& v) { c.dt = to_real(v); }},
      {"time.dt_factor", [](ExperimentConfig& c, const std::string& v) { c.dt_factor = to_real(v); }},
      {"time.samples", [](ExperimentConfig& c, const std::string& v) { c.samples = static_cast<int>(to_integer(v)); }},
      {"init.patch.shape",
       [](ExperimentConfig& c, const std::string& v) {
         if (v == "ellipsoid") {
           c.patch.shape = PatchSpec::Shape::ellipsoid;
         } else if (v == "superellipsoid") {
           c.patch.shape = PatchSpec::Shape::superellipsoid;
         } else {
           throw ConfigError("init.patch.shape must be ellipsoid or superellipsoid");
         }
       }},
      {"init.patch.center", [](ExperimentConfig& c, const std::string& v) { c.patch.center = to_vec3(v); }},
      {"init.patch.axes", [](ExperimentConfig& c, const std::string& v) { c.patch.semi_axes = to_vec3(v); }},
      {"init.patch.exponent", [](ExperimentConfig& c, const std::string& v) { c.patch.exponent = to_real(v); }},
      {"init.patch.interior", [](ExperimentConfig& c, const std::string& v) { c.patch.interior = to_real(v); }},
      {"init.patch.exterior", [](ExperimentConfig& c, const std::string& v) { c.patch.exterior = to_real(v); }},
      {"init.patch.smoothing", [](ExperimentConfig& c, const std::string& v) { c.patch.smoothing = to_real(v); }},
      {"init.osc.enabled", [](ExperimentConfig& c, const std::string& v) { c.osc_enabled = to_bool(v); }},
      {"init.osc.band_a", [](ExperimentConfig& c, const std::string& v) { c.band_a = to_real(v); }},
      {"init.osc.band_b", [](ExperimentConfig& c, const std::string& v) { c.band_b = to_real(v); }},
      {"init.osc.amplitude", [](ExperimentConfig& c, const std::string& v) { c.osc_amplitude = to_real(v); }},
      {"init.osc.envelope_center",
       [](ExperimentConfig& c, const std::string& v) { c.envelope_center = to_vec3(v); }},
      {"init.osc.envelope_width", [](ExperimentConfig& c, const std::string& v) { c.envelope_width = to_real(v); }},
      {"pe.penalized", [](ExperimentConfig& c, const std::string& v) { c.penalized = to_bool(v); }},
      {"pe.cfl", [](ExperimentConfig& c, const std::string& v) { c.cfl = to_real(v); }},
      {"pe.scheme",
       [](ExperimentConfig& c, const std::string& v) {
         if (v == "strang_midpoint") {
           c.scheme = PeScheme::strang_midpoint;
         } else if (v == "if_heun") {
           c.scheme = PeScheme::if_heun;
         } else {
           throw ConfigError("pe.scheme must be strang_midpoint or if_heun");
         }
       }},
      {"kernel.C", [](ExperimentConfig& c, const std::string& v) { c.kernel_C = to_real(v); }},
      {"diagnostics.bootstrap_gamma",
       [](ExperimentConfig& c, const std::string& v) { c.bootstrap_gamma = to_real(v); }},
      {"diagnostics.striated_s", [](ExperimentConfig& c, const std::string& v) { c.striated_s = to_real(v); }},
      {"diagnostics.striated_tracking",
       [](ExperimentConfig& c, const std::string& v) { c.striated_tracking = to_bool(v); }},
      {"output.dir", [](ExperimentConfig& c, const std::string& v) { c.out_dir = v; }},
      {"run.seed",
       [](ExperimentConfig& c, const std::string& v) {
         const long long s = to_integer(v);
         if (s < 0) throw ConfigError("run.seed must be non-negative");
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"run.threads", [](ExperimentConfig& c, const std::string& v) { c.threads = static_cast<int>(to_integer(v)); }},
  };
  return table;
}

}  // namespace

PhysParams ExperimentConfig::params(double eps) const { return {nu, nu_prime, F, eps}; }

InitSpec ExperimentConfig::init_spec(double eps) const {
  InitSpec s;
  s.eps = eps;
  s.beta = beta;
  s.osc_beta = osc_beta;
  s.band_a = band_a;
  s.band_b = band_b;
  s.osc_amplitude = osc_amplitude;
  s.envelope_center = envelope_center;
  s.envelope_width = envelope_width;
  return s;
}

ExperimentConfig parse_config(std::istream& is) {
  ExperimentConfig cfg;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) throw ConfigError(where + "empty key or value");
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(where + "unknown key '" + key + "'");
    if (!seen.insert(key).second) throw ConfigError(where + "repeated key '" + key + "'");
    try {
      it->second(cfg, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + key + ": " + e.what());
    }
  }
  validate(cfg);
  return cfg;
}

ExperimentConfig parse_config_string(const std::string& text) {
  std::istringstream is(text);
  return parse_config(is);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config file " + path);
  return parse_config(is);
}

void validate(const ExperimentConfig& c) {
  try {
    (void)make_grid(c.n, c.L, c.F);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
  if (c.eps_sweep.empty()) throw ConfigError("sweep.eps must not be empty");
  for (double e : c.eps_sweep) {
    try {
      c.params(e).validate();
    } catch (const std::invalid_argument& ex) {
      throw ConfigError(std::string("params: ") + ex.what());
    }
  }
  if (!(c.T > 0.0)) throw ConfigError("time.T must be positive");
  if (!(c.dt > 0.0)) throw ConfigError("time.dt must be positive");
  if (!(c.dt_factor > 0.0)) throw ConfigError("time.dt_factor must be positive");
  if (c.samples < 1) throw ConfigError("time.samples must be at least 1");
  if (!(c.beta > 0.0) || !(c.osc_beta > 0.0)) throw ConfigError("exponents.beta and osc_beta must be positive");
  if (!(c.band_a > 0.0) || !(c.band_a < c.band_b)) throw ConfigError("init.osc band requires 0 < band_a < band_b");
  if (!(c.cfl > 0.0)) throw ConfigError("pe.cfl must be positive");
  if (c.threads < 1) throw ConfigError("run.threads must be at least 1");
}

std::string to_string(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "grid.n = " << c.n << "\n";
  os << "grid.L = " << fmt(c.L) << "\n";
  os << "params.nu = " << fmt(c.nu) << "\n";
  os << "params.nu_prime = " << fmt(c.nu_prime) << "\n";
  os << "params.F = " << fmt(c.F) << "\n";
  os << "sweep.eps = ";
  for (std::size_t i = 0; i < c.eps_sweep.size(); ++i) os << (i ? ", " : "") << fmt(c.eps_sweep[i]);
  os << "\n";
  os << "exponents.beta = " << fmt(c.beta) << "\n";
  os << "exponents.osc_beta = " << fmt(c.osc_beta) << "\n";
  os << "exponents.m = " << fmt(c.m) << "\n";
  os << "exponents.M = " << fmt(c.M) << "\n";
  os << "regime.check = " << (c.regime_check ? "true" : "false") << "\n";
  os << "time.T = " << fmt(c.T) << "\n";
  os << "time.dt_policy = " << (c.dt_policy == DtPolicy::fixed ? "fixed" : "proportional") << "\n";
  os << "time.dt = " << fmt(c.dt) << "\n";
  os << "time.dt_factor = " << fmt(c.dt_factor) << "\n";
  os << "time.samples = " << c.samples << "\n";
  os << "init.patch.shape = " << (c.patch.shape == PatchSpec::Shape::ellipsoid ? "ellipsoid" : "superellipsoid")
     << "\n";
  os << "init.patch.center = " << fmt(c.patch.center) << "\n";
  os << "init.patch.axes = " << fmt(c.patch.semi_axes) << "\n";
  os << "init.patch.exponent = " << fmt(c.patch.exponent) << "\n";
  os << "init.patch.interior = " << fmt(c.patch.interior) << "\n";
  os << "init.patch.exterior = " << fmt(c.patch.exterior) << "\n";
  os << "init.patch.smoothing = " << fmt(c.patch.smoothing) << "\n";
  os << "init.osc.enabled = " << (c.osc_enabled ? "true" : "false") << "\n";
  os << "init.osc.band_a = " << fmt(c.band_a) << "\n";
  os << "init.osc.band_b = " << fmt(c.band_b) << "\n";
  os << "init.osc.amplitude = " << fmt(c.osc_amplitude) << "\n";
  os << "init.osc.envelope_center = " << fmt(c.envelope_center) << "\n";
  os << "init.osc.envelope_width = " << fmt(c.envelope_width) << "\n";
  os << "pe.penalized = " << (c.penalized ? "true" : "false") << "\n";
  os << "pe.cfl = " << fmt(c.cfl) << "\n";
  os << "pe.scheme = " << (c.scheme == PeScheme::strang_midpoint ? "strang_midpoint" : "if_heun") << "\n";
  os << "kernel.C = " << fmt(c.kernel_C) << "\n";
  os << "diagnostics.bootstrap_gamma = " << fmt(c.bootstrap_gamma) << "\n";
  os << "diagnostics.striated_s = " << fmt(c.striated_s) << "\n";
  os << "diagnostics.striated_tracking = " << (c.striated_tracking ? "true" : "false") << "\n";
  os << "output.dir = " << c.out_dir << "\n";
  os << "run.seed = " << c.seed << "\n";
  os << "run.threads = " << c.threads << "\n";
  return os.str();
}

}  // namespace gqg
