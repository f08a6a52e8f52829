/// @file striated.hpp
/// @brief Vector families advected by the flow, directional derivatives
/// X(x, D)w and the striated Hölder norm.
#pragma once

#include <vector>

#include "gqg/field.hpp"

namespace gqg {

struct VectorFamily {
  std::vector<Field3> fields;  ///< N >= 2 members X_lambda
  double t = 0.0;
};

/// dX/dt + v.grad X = X.grad v by Heun steps; v_traj[i] is the velocity at
/// t + i dt, so v_traj.size() - 1 steps are taken.
/// Throws std::invalid_argument for fewer than two samples, CflViolation.
VectorFamily advect_family(const VectorFamily& X, const std::vector<Field3>& v_traj, double dt, double cfl = 0.5);

/// X(x, D)w = div(w X), dealiased.
Field striated_derivative(const Field3& X, const Field& w);

/// Pointwise [X]^{-1} = ((2/(N(N-1))) sum_{l<l'} |X_l x X_l'|^2)^{-1/4};
/// +inf where every cross product vanishes. Throws std::invalid_argument
/// for N < 2.
std::vector<double> admissibility_field(const VectorFamily& X);
/// ||[X]^{-1}||_{L^inf}; +inf for an inadmissible family.
double admissibility(const VectorFamily& X);

/// ||w||_{C^s(X)} = ||w||_inf + ||[X]^{-1}||_inf + sum (||X_l||_{C^s} + ||X_l(x,D)w||_{C^{s-1}}),
/// with the vector C^s norm taken as the largest component norm.
double striated_norm(const Field& w, const VectorFamily& X, double s);

}  // namespace gqg
