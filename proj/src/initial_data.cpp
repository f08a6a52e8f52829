#include "gqg/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "gqg/cutoff.hpp"
#include "gqg/errors.hpp"
#include "gqg/pseudo_diff.hpp"
#include "gqg/qg.hpp"
#include "gqg/spectral.hpp"

namespace gqg {

namespace {

void validate_patch(const PatchSpec& s, double L) {
  for (int i = 0; i < 3; ++i) {
    if (!(s.semi_axes[i] > 0.0)) throw ConfigError("patch semi-axes must be positive");
  }
  if (!(s.exponent >= 1.0)) throw ConfigError("superellipsoid exponent must be >= 1");
  if (!(s.smoothing >= 0.0)) throw ConfigError("patch smoothing width must be non-negative");
  const double margin = 0.1 * L;
  for (int i = 0; i < 3; ++i) {
    const double reach = s.semi_axes[i] + 3.0 * s.smoothing;
    if (s.center[i] - reach < margin || s.center[i] + reach > L - margin) {
      throw ConfigError("vortex patch exceeds the torus margin of 10% of L");
    }
  }
}

}  // namespace

double patch_level(const PatchSpec& s, const Vec3& x) {
  const double p = s.shape == PatchSpec::Shape::ellipsoid ? 2.0 : s.exponent;
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) acc += std::pow(std::abs((x[i] - s.center[i]) / s.semi_axes[i]), p);
  return acc - 1.0;
}

double patch_value(const PatchSpec& s, const Vec3& x) {
  const double phi = patch_level(s, x);
  if (s.smoothing == 0.0) return phi <= 0.0 ? s.interior : s.exterior;
  const double p = s.shape == PatchSpec::Shape::ellipsoid ? 2.0 : s.exponent;
  const double amin = std::min({s.semi_axes[0], s.semi_axes[1], s.semi_axes[2]});
  const double d = phi * amin / p;
  return s.exterior + (s.interior - s.exterior) * 0.5 * std::erfc(d / s.smoothing);
}

PatchVorticity patch_vorticity(const PatchSpec& s, const Grid3& g) {
  validate_patch(s, g.box_length());
  Field w = sample(g, [&](const Vec3& x) { return patch_value(s, x); });
  double m = 0.0;
  for (const cplx& c : w.values()) m += c.real();
  m /= static_cast<double>(g.size());
  for (cplx& c : w.values()) c -= m;
  const double l2 = norm(w, NormSpec::Lp(2.0));
  const double linf = norm(w, NormSpec::Linf());
  Field ws = to_spectral(w);
  ws[Grid3::zero_mode()] = 0.0;
  return {std::move(ws), l2, linf};
}

Field regularize(const Field& f, const InitSpec& spec, Filter filter) {
  const Grid3& g = f.grid();
  const double kmax = g.dealias_cutoff() * g.unit();
  std::vector<double> t(g.size());
  if (filter == Filter::chi_lowpass) {
    const double s = std::pow(spec.eps, spec.beta);
    for (std::size_t k = 0; k < g.size(); ++k) t[k] = chi(s * std::sqrt(g.xi_sq(k)));
  } else {
    if (!(spec.band_a > 0.0) || !(spec.band_a < spec.band_b)) {
      throw std::domain_error("oscillating band requires 0 < a < b");
    }
    const double s = std::pow(spec.eps, spec.osc_beta);
    if (spec.band_a / s >= kmax) throw std::domain_error("oscillating band lies above the retained modes");
    for (std::size_t k = 0; k < g.size(); ++k) t[k] = psi_band(s * std::sqrt(g.xi_sq(k)), spec.band_a, spec.band_b);
  }
  return apply_table(f, t);
}

Field4 regularize(const Field4& U, const InitSpec& spec, Filter filter) {
  return Field4(regularize(U[0], spec, filter), regularize(U[1], spec, filter), regularize(U[2], spec, filter),
                regularize(U[3], spec, filter));
}

Field4 make_oscillating(std::uint64_t seed, const InitSpec& spec, const Grid3& g, const PhysParams& p) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Field4 U(g, Rep::physical);
  for (int c = 0; c < 4; ++c) {
    for (std::size_t k = 0; k < g.size(); ++k) U[c][k] = normal(rng);
  }
  U = regularize(to_spectral(U), spec, Filter::psi_band);
  if (spec.envelope_width > 0.0) {
    const double w2 = spec.envelope_width * spec.envelope_width;
    const Field env = sample(g, [&](const Vec3& x) {
      double r2 = 0.0;
      for (int i = 0; i < 3; ++i) r2 += (x[i] - spec.envelope_center[i]) * (x[i] - spec.envelope_center[i]);
      return std::exp(-0.5 * r2 / w2);
    });
    for (int c = 0; c < 4; ++c) U[c] = product(U[c], to_spectral(env));
  }
  U = dealias(leray_project(U));
  U = decompose(U, p).osc;
  for (int c = 0; c < 4; ++c) U[c][Grid3::zero_mode()] = 0.0;
  const double h1 = norm(U, NormSpec::Hdot(1.0));
  if (h1 == 0.0) throw std::domain_error("oscillating band holds no grid modes");
  if (spec.osc_amplitude > 0.0) U *= spec.osc_amplitude / h1;
  return U;
}

VectorFamily tangent_family(const PatchSpec& s, const Grid3& g) {
  validate_patch(s, g.box_length());
  const double r3 = 1.0 / std::sqrt(3.0), r2 = 1.0 / std::sqrt(2.0);
  const std::array<Vec3, 5> dirs{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}, Vec3{r3, r3, r3}, Vec3{r2, -r2, 0}};
  const double p = s.shape == PatchSpec::Shape::ellipsoid ? 2.0 : s.exponent;
  VectorFamily X;
  for (const Vec3& e : dirs) {
    Field3 f{Field(g, Rep::physical), Field(g, Rep::physical), Field(g, Rep::physical)};
    for (std::size_t k = 0; k < g.size(); ++k) {
      const Vec3 x = g.position(k);
      const double eta = chi(std::abs(patch_level(s, x)) / 0.5);
      Vec3 v = e;
      if (eta > 0.0) {
        Vec3 grad;
        for (int i = 0; i < 3; ++i) {
          const double y = (x[i] - s.center[i]) / s.semi_axes[i];
          grad[i] = p * std::pow(std::abs(y), p - 1.0) * (y < 0.0 ? -1.0 : 1.0) / s.semi_axes[i];
        }
        const double gn = std::sqrt(grad[0] * grad[0] + grad[1] * grad[1] + grad[2] * grad[2]);
        const Vec3 n{grad[0] / gn, grad[1] / gn, grad[2] / gn};
        const Vec3 t{e[1] * n[2] - e[2] * n[1], e[2] * n[0] - e[0] * n[2], e[0] * n[1] - e[1] * n[0]};
        for (int i = 0; i < 3; ++i) v[i] = eta * t[i] + (1.0 - eta) * e[i];
      }
      for (int i = 0; i < 3; ++i) f[static_cast<std::size_t>(i)][k] = v[i];
    }
    X.fields.push_back({dealias(f[0]), dealias(f[1]), dealias(f[2])});
  }
  return X;
}

HypothesisNorms hypothesis_norms(const Field4& U) {
  return {norm(U, NormSpec::Hdot(1.0)), norm(U, NormSpec::H(6.0))};
}

}  // namespace gqg
