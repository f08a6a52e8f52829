/// @file invariants.hpp
/// @brief Property suites, one per acceptance criterion, with pinned
/// tolerances and machine-readable results.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gqg/config.hpp"

namespace gqg {

struct Check {
  std::string name;
  double measured;
  double threshold;
  std::string relation;  ///< how measured is compared to threshold
  bool pass;
};

struct SuiteResult {
  std::string suite;
  std::vector<Check> checks;
  bool pass() const;
  /// One-line summary: every check as name=measured.
  std::string summary() const;
};

/// symbol, decomposition, eigen, energy, linear, bilinear, semigroup,
/// littlewood_paley, convergence, striated, determinism (criteria 1 to 11).
const std::vector<std::string>& suite_names();

/// Runs one suite. cfg drives the convergence suite; the others use pinned
/// parameters and only take the seed from cfg.
/// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, const ExperimentConfig& cfg);

/// Throws std::invalid_argument for an empty list or an unknown name.
std::vector<SuiteResult> run_invariants(const ExperimentConfig& cfg, const std::vector<std::string>& suites);

/// suite,check,measured,relation,threshold,pass rows.
void write_invariants_csv(std::ostream& os, const std::vector<SuiteResult>& results);

}  // namespace gqg
