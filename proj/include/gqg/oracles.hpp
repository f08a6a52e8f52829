/// @file oracles.hpp
/// @brief Independent reference computations used to validate the solvers.
#pragma once

#include <array>
#include <functional>

#include "gqg/field.hpp"
#include "gqg/params.hpp"
#include "gqg/wave_matrix.hpp"

namespace gqg {

/// exp(A) by Taylor series with scaling and squaring in long double.
Mat4 expm_taylor(const Mat4& A);

/// Free-space kernel of exp(t Gamma) at x, by angular quadrature of the
/// radial Fourier integral (closed form in |xi|):
///   K_t(x) = (2 pi)^-3 int_{S^2} sqrt(pi)/(4 a^{3/2}) (1 - b^2/(2a)) exp(-b^2/(4a)) dw,
///   a = t gamma(w), b = w.x, gamma(w) = -Gamma(w).
/// n_theta Gauss-Legendre nodes in the polar angle, n_phi trapezoid nodes in
/// the azimuth. Throws std::invalid_argument for t <= 0.
double semigroup_kernel(const Vec3& x, double t, const PhysParams& p, int n_theta = 64, int n_phi = 64);

/// Periodized K_t sampled on the grid, images with |m_i| <= 1, contributions
/// beyond |x| = cutoff dropped. Values are cached per distinct
/// (horizontal radius, |x3|) pair.
Field semigroup_kernel_grid(const Grid3& g, double t, const PhysParams& p, double cutoff);

/// Discrete periodic convolution h^3 sum_y K(x - y) u(y) via FFT.
Field periodic_convolution(const Field& kernel, const Field& u);

/// Grid kernel of the discrete operator exp(t Gamma): inverse transform of
/// the multiplier table, so that the operator's L^inf -> L^inf norm is
/// sum |k_j|.
double semigroup_linf_norm(const Grid3& g, double t, const PhysParams& p);

/// One integrating-factor Heun step of d_t w + v.grad w = nu Delta w with v
/// the Biot-Savart velocity, advective form, exp(nu dt Delta) exactly.
Field heat_transport_step(const Field& omega, double dt, const PhysParams& p);

/// Periodic Gaussian exp(-|x - c|^2 / (2 sigma^2)) (nearest image) sampled on the grid.
Field gaussian_bump(const Grid3& g, const Vec3& center, double sigma);

/// Physical random field, standard normal samples band-limited to the
/// retained modes, mean removed.
Field random_field(const Grid3& g, unsigned long long seed);
Field4 random_field4(const Grid3& g, unsigned long long seed);

using Mat3 = std::array<std::array<double, 3>, 3>;
/// Value at (t, x) of a vector field advected and stretched by a steady
/// velocity, X(0) = X0 constant: RK4 back along the characteristic to its
/// foot a, then RK4 forward for the Jacobian, X(t, x) = D Phi_t(a) X0.
Vec3 lagrangian_stretch(const std::function<Vec3(const Vec3&)>& v, const std::function<Mat3(const Vec3&)>& grad_v,
                        const Vec3& x, double t, const Vec3& X0, int steps);

/// Random divergence-free state with modes |k|_inf <= kmax, zero mean,
/// scaled to the given L^inf amplitude.
Field4 smooth_solenoidal(const Grid3& g, unsigned long long seed, int kmax, double amplitude);

/// Relative L^2 distance ||a - b|| / ||b|| (absolute when b = 0).
double rel_l2(const Field& a, const Field& b);
double rel_l2(const Field4& a, const Field4& b);

}  // namespace gqg
