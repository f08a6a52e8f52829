/// @file qg.hpp
/// @brief Potential vorticity, the Biot-Savart inversion and the Q/P split.
#pragma once

#include "gqg/field.hpp"
#include "gqg/params.hpp"

namespace gqg {

/// Omega(U) = d1 v2 - d2 v1 - F d3 theta (spectral, zero mode exactly 0).
Field potential_vorticity(const Field4& U, const PhysParams& p);

/// U = (-d2, d1, 0, -F d3) Delta_F^{-1} omega.
/// Throws std::domain_error if omega has nonzero mean.
Field4 biot_savart(const Field& omega, const PhysParams& p);

struct Decomposition {
  Field4 qg;
  Field4 osc;
};

/// U_QG = biot_savart(potential_vorticity(U)), U_osc = U - U_QG.
Decomposition decompose(const Field4& U, const PhysParams& p);

/// The skew matrix A applied pointwise: (-v2, v1, theta/F, -v3/F).
Field4 skew_A(const Field4& U, const PhysParams& p);
/// L U = (nu Delta v, nu' Delta theta).
Field4 diffusion_L(const Field4& U, const PhysParams& p);
/// Gamma applied componentwise.
Field4 apply_gamma(const Field4& U, const PhysParams& p);

/// Dealiased v.grad w, evaluated as div(v w); v must be divergence free.
Field transport(const Field3& v, const Field& w);
/// Dealiased v.grad U componentwise.
Field4 transport(const Field3& v, const Field4& U);
/// Velocity part (v1, v2, v3) of a Field4.
Field3 velocity(const Field4& U);

}  // namespace gqg
