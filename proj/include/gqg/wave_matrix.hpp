/// @file wave_matrix.hpp
/// @brief The penalized linear operator per Fourier mode, its eigenstructure
/// and the frequency truncation P_{r,R}.
#pragma once

#include <Eigen/Dense>
#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "gqg/field.hpp"
#include "gqg/params.hpp"

namespace gqg {

using Mat4 = Eigen::Matrix4d;
using CMat4 = Eigen::Matrix4cd;

/// B(xi, eps), the symbol of L - (1/eps) P A acting on (v1, v2, v3, theta).
/// Throws std::domain_error at xi = 0.
Mat4 matrix_B(const Vec3& xi, const PhysParams& p);
/// The viscous part alone (B with the skew term removed).
Mat4 matrix_L(const Vec3& xi, const PhysParams& p);

/// tau(xi) = (nu/2)(1 + F^2 xi3^2/|xi|_F^2) + (nu'/2)(1 - F^2 xi3^2/|xi|_F^2).
double tau(const Vec3& xi, const PhysParams& p);

struct AsymptoticEigen {
  double mu0;
  double mu;
  cplx lambda;
  cplx lambda_bar;
  double tau;
};

/// Leading-order eigenvalues: mu0 = -nu|xi|^2, mu = Gamma symbol,
/// lambda = -tau|xi|^2 + i |xi|_F / (eps F |xi|).
AsymptoticEigen asymptotic_eigenvalues(const Vec3& xi, const PhysParams& p);

/// Numeric eigenstructure of B, labeled against the asymptotic forms.
/// projectors[0..3] correspond to (mu0, mu, lambda, lambda_bar).
struct ModeEigen {
  double mu0;
  cplx mu;
  cplx lambda;
  cplx lambda_bar;
  double tau;
  std::array<CMat4, 4> projectors;
  cplx residual_D;  ///< (mu - mu_leading) / eps^2
  cplx residual_E;  ///< (lambda - lambda_leading) / eps
  double condition;  ///< 2-norm condition number of the eigenvector matrix
};

/// Throws EigenAmbiguity when two eigenvalues are closer than 1e-6 (relative
/// to the spectral radius, floor 1) or no conjugate pair exists. Defective
/// double eigenvalues split by about sqrt(machine eps) in floating point, so
/// a tighter threshold would miss them.
ModeEigen eigen_B(const Vec3& xi, const PhysParams& p);

/// exp(A) by Pade scaling and squaring.
Mat4 expm_pade(const Mat4& A);
enum class ExpmRoute {
  pade,   ///< scaling and squaring, accurate to a few ulps of ||hB||
  eigen,  ///< V exp(h D) V^-1, Pade when cond(V) >= 1e8; error grows with cond(V)
};
/// exp(h B(xi)). The zero mode uses B = -A/eps; unpenalized modes are the
/// diagonal exp(h L).
Mat4 expm_B(const Vec3& xi, const PhysParams& p, double h, bool penalized = true, ExpmRoute route = ExpmRoute::pade);

/// Truncation radii r = eps^m, R = eps^-M.
struct Truncation {
  double r;
  double R;
  static Truncation from_exponents(double eps, double m, double M);
};

/// chi(|xi|/R) (1 - chi(|xi3|/r)).
double truncation_symbol(const Vec3& xi, double r, double R);
/// Membership in C_{r,R} = {|xi| <= R, |xi3| >= r}.
bool in_truncation_set(const Vec3& xi, double r, double R);
/// Throws std::invalid_argument unless 0 < r < R.
Field truncate(const Field& f, double r, double R);
Field4 truncate(const Field4& f, double r, double R);

/// Applies the eigen-projector P_i (i in {2, 3, 4}) per mode after truncation.
Field4 mode_projector(int i, const Field4& f, const PhysParams& p, const Truncation& tr);

/// Whether (m, M) satisfy M < 1/4 and 3M + m < 1; message explains a failure.
struct RegimeCheck {
  bool ok;
  std::string message;
};
RegimeCheck check_regime(double m, double M);

/// CSV rows (xi, eigenvalues, tau, residuals) for a set of wavenumbers.
/// Ambiguous modes are written with an "ambiguous" status column.
void write_eigen_csv(std::ostream& os, const std::vector<Vec3>& xis, const PhysParams& p);

}  // namespace gqg
