/// @file initial_data.hpp
/// @brief Vortex-patch potential vorticity, frequency regularization and
/// oscillating data with zero potential vorticity.
#pragma once

#include <cstdint>

#include "gqg/field.hpp"
#include "gqg/params.hpp"
#include "gqg/striated.hpp"

namespace gqg {

struct PatchSpec {
  enum class Shape { ellipsoid, superellipsoid };
  Shape shape = Shape::ellipsoid;
  Vec3 center{};
  Vec3 semi_axes{1.0, 1.0, 1.0};
  double exponent = 2.0;  ///< superellipsoid exponent (2 for an ellipsoid)
  double interior = 1.0;
  double exterior = 0.0;
  double smoothing = 0.0;  ///< boundary width h_b >= 0
};

/// Level function phi = sum |(x_i - c_i)/a_i|^p - 1 (negative inside).
double patch_level(const PatchSpec& s, const Vec3& x);
/// Indicator (h_b = 0) or erf-smoothed indicator across the boundary, using
/// the signed pseudo-distance phi * min(a) / p.
double patch_value(const PatchSpec& s, const Vec3& x);

struct PatchVorticity {
  Field omega;  ///< spectral, mean zero
  double l2;
  double linf;
};
/// Sampled patch minus its mean. Throws ConfigError when the patch (plus
/// three smoothing widths) leaves the box [0.1 L, 0.9 L]^3 or the patch is
/// malformed.
PatchVorticity patch_vorticity(const PatchSpec& s, const Grid3& g);

struct InitSpec {
  double eps = 1.0;
  double beta = 1.0;      ///< exponent of the QG low-pass chi(eps^beta |D|)
  double osc_beta = 1.0;  ///< exponent of the oscillating band filter
  double band_a = 1.0;    ///< psi band [a, b] in units of eps^-osc_beta
  double band_b = 4.0;
  double osc_amplitude = 1.0;  ///< target ||U_osc||_{Hdot^1}; <= 0 keeps raw scale
  /// Optional Gaussian envelope localizing the oscillating packet; width 0
  /// disables it.
  Vec3 envelope_center{};
  double envelope_width = 0.0;
};

enum class Filter { chi_lowpass, psi_band };

/// chi(eps^beta |xi|) or psi(eps^osc_beta |xi|) per component. Throws
/// std::domain_error when the band misses the retained modes.
Field regularize(const Field& f, const InitSpec& spec, Filter filter);
Field4 regularize(const Field4& U, const InitSpec& spec, Filter filter);

/// Random divergence-free data in the psi band, projected onto Omega = 0 and
/// scaled to osc_amplitude. Bit-reproducible from the seed.
Field4 make_oscillating(std::uint64_t seed, const InitSpec& spec, const Grid3& g, const PhysParams& p);

/// Five fields: e_k x n near the patch boundary blended by a smooth bump
/// into the constant directions e_1, e_2, e_3, (e_1+e_2+e_3)/sqrt 3,
/// (e_1-e_2)/sqrt 2 away from it; n is the unit normal of the level sets.
VectorFamily tangent_family(const PatchSpec& s, const Grid3& g);

/// ||U||_{Hdot^1} and ||U||_{H^6} for the Theorem-1 data hypotheses.
struct HypothesisNorms {
  double hdot1;
  double h6;
};
HypothesisNorms hypothesis_norms(const Field4& U);

}  // namespace gqg
