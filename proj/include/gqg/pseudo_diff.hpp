/// @file pseudo_diff.hpp
/// @brief Non-local operators: Gamma, Gamma_L, Lambda, the kernel K, the
/// Leibniz remainder M and the semigroup exp(t Gamma).
#pragma once

#include <array>
#include <numbers>
#include <vector>

#include "gqg/field.hpp"
#include "gqg/params.hpp"

namespace gqg {

enum class SymbolKind { Gamma, GammaLocal, Lambda, DeltaF, DeltaFInv, LerayProjector };

/// Real symbol of a scalar operator at xi.
///
///   Gamma       -(|xi|^2/|xi|_F^2)(nu xi1^2 + nu xi2^2 + nu' F^2 xi3^2)
///   GammaLocal  -(nu xi1^2 + nu xi2^2 + ((1-F^2)nu + F^2 nu') xi3^2)
///   Lambda      -xi3^2/|xi|_F
///   DeltaF      -|xi|_F^2
///   DeltaFInv   -1/|xi|_F^2
///
/// Throws std::domain_error at xi = 0 for Gamma, Lambda and DeltaFInv, and
/// std::invalid_argument for LerayProjector (matrix valued, see leray_symbol).
double symbol_value(SymbolKind kind, const Vec3& xi, const PhysParams& p);

/// Per-mode table of a scalar symbol; the zero mode is set to 0.
std::vector<double> symbol_table(SymbolKind kind, const Grid3& g, const PhysParams& p);

/// Spectral application of a scalar symbol (zero mode annihilated).
/// Throws std::invalid_argument if the grid's F differs from p.F.
Field apply_symbol(const Field& f, SymbolKind kind, const PhysParams& p);
Field apply_gamma(const Field& f, const PhysParams& p);
Field apply_lambda(const Field& f, const PhysParams& p);

/// I - xi xi^T / |xi|^2 (identity at xi = 0).
std::array<std::array<double, 3>, 3> leray_symbol(const Vec3& xi);
/// Leray projection of the velocity part; theta is unchanged.
Field4 leray_project(const Field4& U);

/// 1/(2 pi^2): the value for which the kernel reproduces the Lambda symbol.
inline constexpr double kKernelC = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi);

/// K(y) = -(2C/F^3)(y1^2 + y2^2 - 3 y3^2/F^2) / (y1^2 + y2^2 + y3^2/F^2)^3.
/// Throws std::domain_error at y = 0.
double kernel_K(const Vec3& y, double F, double C);

struct KernelEval {
  double C = kKernelC;
  double F = 1.0;
  double operator()(const Vec3& y) const { return kernel_K(y, F, C); }
};

/// M(f, g) = Lambda(fg) - f Lambda g - g Lambda f, products dealiased.
Field bilinear_M(const Field& f, const Field& g, const PhysParams& p);

/// exp(t Gamma) f. Throws std::invalid_argument for t < 0.
Field semigroup_gamma(const Field& f, double t, const PhysParams& p);

/// Direct quadrature of M(f, g)(x) = int K(y)(f(x-y)-f(x))(g(x-y)-g(x)) dy.
///
/// Oracle for small grids (n <= 16). The integral is folded onto one period
/// using the periodic images of K with |m_i| L <= quad_radius; the region
/// beyond contributes the y-mean of the integrand times the exact kernel mass
/// outside that box. f and g are interpolated spectrally onto a quad_n^3
/// lattice (quad_n a multiple of n). The quadratic part of the integrand near
/// y = 0 is subtracted with a Gaussian weight and added back in closed form.
Field bilinear_M_oracle(const Field& f, const Field& g, const PhysParams& p, double quad_radius, int quad_n,
                        double C = kKernelC);

/// Same quadrature applied to Lambda f(x) = int K(y)(f(x-y) - f(x)) dy.
Field lambda_oracle(const Field& f, const PhysParams& p, double quad_radius, int quad_n, double C = kKernelC);

/// Least-squares C matching lambda_oracle (with C = 1) to the spectral
/// Lambda on a smooth bump.
double calibrate_kernel_constant(const Grid3& g, const PhysParams& p, double quad_radius, int quad_n);

}  // namespace gqg
