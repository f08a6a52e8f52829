/// @file dynamics.hpp
/// @brief Time integration of the primitive equations and of the
/// quasi-geostrophic system, and the potential-vorticity right-hand side.
#pragma once

#include <string>
#include <vector>

#include "gqg/field.hpp"
#include "gqg/params.hpp"
#include "gqg/wave_matrix.hpp"

namespace gqg {

struct PEState {
  Field4 U;  ///< spectral, divergence-free velocity
  double t = 0.0;
  PhysParams params;
};

struct QGState {
  Field omega;  ///< spectral, mean zero
  double t = 0.0;
};

enum class PeScheme {
  /// exp((dt/2)B), implicit midpoint on the nonlinear term, exp((dt/2)B).
  /// Energy neutral in the nonlinear stage for every eps.
  strang_midpoint,
  /// Integrating-factor Heun with exp(dt B).
  if_heun,
};

struct PeOptions {
  bool nonlinear = true;
  bool penalized = true;  ///< false drops the (1/eps) P A term
  double cfl = 0.5;
  PeScheme scheme = PeScheme::strang_midpoint;
  double fixed_point_tol = 1e-13;
  int fixed_point_max_iter = 60;
  /// Accumulate exact per-mode energy budgets of the linear stages
  /// (strang_midpoint only).
  bool track_energy = false;
};

/// Exact energy bookkeeping accumulated over steps.
struct EnergyBudget {
  double dissipation = 0.0;       ///< int 2(nu |grad v|^2 + nu' |grad theta|^2)
  double grad_sq_integral = 0.0;  ///< int ||grad U||^2_{L^2}
  double max_skew_defect = 0.0;   ///< max |<P A U, U>| / ||U||^2 per step
  int steps = 0;
};

/// -P P_S div(v (x) U): the projected, dealiased advection term.
Field4 pe_nonlinear(const Field4& U);
/// -P_S div(v Omega) with v from the Biot-Savart law.
Field qg_nonlinear(const Field& omega, const PhysParams& p);

/// Fixed-step integrator for one (grid, params, dt, options). Per-mode
/// exponentials (and Gramians when tracking energy) are built once.
class PeStepper {
 public:
  PeStepper(const Grid3& g, const PhysParams& p, double dt, const PeOptions& opt = {});
  /// Throws CflViolation, NumericalBlowup, std::invalid_argument on a grid or
  /// parameter mismatch.
  PEState step(const PEState& s);
  const EnergyBudget& budget() const { return budget_; }
  double dt() const { return dt_; }
  const PeOptions& options() const { return opt_; }
  bool matches(const Grid3& g, const PhysParams& p, double dt, const PeOptions& opt) const;

 private:
  Field4 linear(const Field4& U, bool account);
  Field4 nonlinear_midpoint(const Field4& U);
  void check_cfl(const Field4& U) const;

  Grid3 grid_;
  PhysParams p_;
  double dt_;
  PeOptions opt_;
  std::vector<std::size_t> modes_;
  std::vector<Mat4> expo_;
  std::vector<Mat4> gram_diss_;
  std::vector<Mat4> gram_grad_;
  EnergyBudget budget_;
};

/// One step with a cached stepper. Throws as PeStepper::step and
/// std::invalid_argument for dt <= 0.
PEState step_pe(const PEState& s, double dt, const PeOptions& opt = {});

/// Integrating-factor Heun with exact exp(dt Gamma).
/// Throws std::invalid_argument for dt <= 0, CflViolation, NumericalBlowup.
QGState step_qg(const QGState& s, double dt, const PhysParams& p, double cfl = 0.5);

/// -v.grad Omega + Gamma Omega + (nu - nu') F Delta d3 theta_osc + q_eps.
Field rhs_omega(const Field4& U, const PhysParams& p);
/// q(U_osc, U), the five-term expression, with dealiased products.
Field compute_q_eps(const Field4& U_osc, const Field4& U, const PhysParams& p);

/// Skew defect |<P A U, U>| / ||U||^2.
double skew_defect(const Field4& U, const PhysParams& p);

/// Appends U to a checkpoint directory: field dumps u<step>_<c>.bin and a row
/// (step, t, nu, nu', F, eps) in index.csv.
void write_checkpoint(const std::string& dir, int step, const PEState& s);

}  // namespace gqg
