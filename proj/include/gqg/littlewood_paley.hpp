/// @file littlewood_paley.hpp
/// @brief Dyadic blocks, Besov and Hölder norms, space-time Besov norms and
/// the Bony decomposition.
#pragma once

#include <vector>

#include "gqg/field.hpp"

namespace gqg {

enum class BlockKind { delta, s_low };

/// Representable dyadic indices for a grid. Inhomogeneous blocks start at
/// q = -1; homogeneous blocks start low enough that every nonzero mode is
/// covered. Blocks above q_max vanish identically.
struct DyadicRange {
  int q_min;
  int q_max;
};
DyadicRange dyadic_range(const Grid3& g, bool homogeneous);

/// Delta_q u = phi(2^-q D) u (q >= 0, or any q when homogeneous),
/// Delta_-1 u = chi(D) u (inhomogeneous), S_q u = chi(2^-q D) u.
/// Inhomogeneous S_q vanishes for q <= -1; homogeneous blocks drop the mean.
/// Throws std::out_of_range for q outside dyadic_range (inhomogeneous S_q
/// accepts every q <= -1).
Field dyadic_block(const Field& u, int q, BlockKind kind, bool homogeneous);

struct BesovSpec {
  double s = 0.0;
  double p = 2.0;  ///< 1, 2 or infinity
  double r = 2.0;  ///< 1, 2 or infinity
  bool homogeneous = false;
};

struct BesovNorm {
  double value;     ///< l^r of 2^{qs} ||Delta_q u||_{L^p}
  double s_form;    ///< l^r of 2^{qs} ||S_q u||_{L^p}; NaN unless s < 0
};

/// Throws std::invalid_argument for p or r outside {1, 2, inf} and
/// std::domain_error for homogeneous s <= 0 on a field with nonzero mean.
BesovNorm besov_norm(const Field& u, const BesovSpec& spec);
/// C^s = B^s_{inf,inf}.
double holder_norm(const Field& u, double s);

/// ||u||_{L~^r([t0,t1], B^sigma_{p,inf})} = sup_q 2^{q sigma} ||Delta_q u||_{L^r_t L^p}
/// with trapezoidal time quadrature over the samples.
double tilde_norm(const std::vector<Field>& traj, const std::vector<double>& times, double sigma, double p,
                  double r, bool homogeneous = false);

/// ||grad Delta_q u||_{L^p} / (2^q ||Delta_q u||_{L^p}); NaN for an empty block.
double bernstein_ratio(const Field& u, int q, double p);

struct Bony {
  Field T_f_g;
  Field T_g_f;
  Field remainder;
};
/// f g = T_f g + T_g f + R(f, g) with dealiased products.
/// Throws std::invalid_argument on grid mismatch.
Bony bony_decompose(const Field& f, const Field& g);
/// S_{q-1} f * Delta_q g, one summand of the paraproduct.
Field paraproduct_term(const Field& f, const Field& g, int q);

}  // namespace gqg
