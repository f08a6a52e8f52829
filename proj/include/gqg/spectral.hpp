/// @file spectral.hpp
/// @brief Fourier multipliers, derivatives, dealiased products and norms.
#pragma once

#include <functional>
#include <limits>

#include "gqg/field.hpp"

namespace gqg {

using Symbol = std::function<cplx(const Vec3&)>;

/// Multiplies every nonzero mode by m(xi) and the zero mode by zero_mode.
/// Throws std::domain_error if m is not finite at a nonzero grid mode.
Field apply_multiplier(const Field& f, const Symbol& m, cplx zero_mode);

/// Multiplies mode k by table[k]; table has one entry per grid mode.
Field apply_table(const Field& f, const std::vector<double>& table);

/// Spectral partial derivative along axis 0, 1 or 2.
Field partial(const Field& f, int axis);
Field laplacian(const Field& f);
/// Zeroes modes outside the 2/3-rule band.
Field dealias(const Field& f);
Field4 dealias(const Field4& f);
/// Spectral, dealiased product of two real fields.
Field product(const Field& a, const Field& b);
/// Mean value (zero-mode coefficient, real part).
double mean(const Field& f);

Field3 gradient(const Field& f);
Field divergence(const Field3& X);

struct NormSpec {
  enum class Kind { Lp, Hdot, H };
  Kind kind = Kind::Lp;
  double value = 2.0;

  static NormSpec Lp(double p) { return {Kind::Lp, p}; }
  static NormSpec Linf() { return {Kind::Lp, std::numeric_limits<double>::infinity()}; }
  static NormSpec Hdot(double s) { return {Kind::Hdot, s}; }
  static NormSpec H(double s) { return {Kind::H, s}; }
};

/// L^p (p in {1,2,4,6,inf}) with the torus measure, homogeneous or
/// inhomogeneous Sobolev norms. Representation is converted as needed.
/// Throws std::invalid_argument for unsupported p and std::domain_error for
/// Hdot with s <= 0 on a field with nonzero mean.
double norm(const Field& f, const NormSpec& spec);
/// Field4 norms: L^p of the pointwise Euclidean length; Sobolev norms sum
/// over components.
double norm(const Field4& f, const NormSpec& spec);
double norm(const Field3& f, const NormSpec& spec);

/// Real Hdot^s inner product (zero mode excluded), torus measure.
double inner(const Field& a, const Field& b, double s);
double inner(const Field4& a, const Field4& b, double s);

/// max over nonzero, non-Nyquist modes of |xi . v_hat| / (|xi| |v_hat| + eps_mach m), with
/// m the largest |xi| |v_hat| over the grid.
double divergence_defect(const Field4& U);

/// Largest |Im| relative to largest |value| of a physical field.
double imaginary_defect(const Field& f);

}  // namespace gqg
