/// @file config.hpp
/// @brief Flat key-value experiment configuration.
///
/// Grammar: one `key = value` per line, `#` starts a comment, blank lines
/// are ignored, sections are dotted key prefixes. Lists are comma
/// separated, vectors are three comma-separated reals, booleans are
/// true/false. Unknown and repeated keys are errors.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "gqg/dynamics.hpp"
#include "gqg/initial_data.hpp"
#include "gqg/params.hpp"

namespace gqg {

enum class DtPolicy {
  fixed,         ///< dt = time.dt for every eps
  proportional,  ///< dt = time.dt_factor * eps, capped at time.dt
};

struct ExperimentConfig {
  int n = 32;
  double L = 2.0 * 3.14159265358979323846;
  double nu = 1.0;
  double nu_prime = 1.0;
  double F = 1.0;
  std::vector<double> eps_sweep{1e-1, 5e-2, 2.5e-2, 1.25e-2};
  double beta = 1.0;
  double osc_beta = 1.0;
  double m = 0.1;
  double M = 0.2;
  bool regime_check = false;
  double T = 0.5;
  DtPolicy dt_policy = DtPolicy::fixed;
  double dt = 1e-3;
  double dt_factor = 0.1;
  int samples = 10;  ///< metric rows per trajectory (plus t = 0)
  PatchSpec patch{PatchSpec::Shape::ellipsoid, {3.14159265358979323846, 3.14159265358979323846, 3.14159265358979323846},
                  {1.2, 1.0, 0.8}, 2.0, 1.0, 0.0, 0.15};
  bool osc_enabled = true;
  double band_a = 1.0;
  double band_b = 4.0;
  double osc_amplitude = 1.0;
  Vec3 envelope_center{};
  double envelope_width = 0.0;
  bool penalized = true;
  double cfl = 0.5;
  PeScheme scheme = PeScheme::strang_midpoint;
  double kernel_C = 1.0 / (2.0 * 3.14159265358979323846 * 3.14159265358979323846);
  double bootstrap_gamma = 1.0;
  double striated_s = 0.5;
  bool striated_tracking = false;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  int threads = 1;

  PhysParams params(double eps) const;
  InitSpec init_spec(double eps) const;
};

/// Parses config text on top of the defaults. Throws ConfigError with the
/// offending line number.
ExperimentConfig parse_config(std::istream& is);
ExperimentConfig parse_config_string(const std::string& text);
/// Throws ConfigError when the file cannot be read.
ExperimentConfig load_config(const std::string& path);
/// Semantic validation (grid, params, sweep, horizon). Throws ConfigError.
void validate(const ExperimentConfig& cfg);
/// Canonical key = value listing of every field.
std::string to_string(const ExperimentConfig& cfg);

}  // namespace gqg
