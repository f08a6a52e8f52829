/// @file test_spectral_core.cpp
/// @brief Grid, transforms, multipliers, norms, cut-off and dumps.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "gqg/cutoff.hpp"
#include "gqg/dump.hpp"
#include "gqg/field.hpp"
#include "gqg/grid.hpp"
#include "gqg/oracles.hpp"
#include "gqg/params.hpp"
#include "gqg/spectral.hpp"

using namespace gqg;

namespace {
constexpr double kPi = std::numbers::pi;

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}
double max_abs(const Field& a) {
  double m = 0.0;
  for (const cplx& c : a.values()) m = std::max(m, std::abs(c));
  return m;
}
}  // namespace

TEST(Grid, AxisWavenumbersN8) {
  const Grid3 g = make_grid(8, 2 * kPi, 1.0);
  const std::vector<double> expected{0, 1, 2, 3, -4, -3, -2, -1};
  ASSERT_EQ(g.axis_wavenumbers().size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_DOUBLE_EQ(g.axis_wavenumbers()[i], expected[i]);
  EXPECT_EQ(g.size(), 512u);
}

TEST(Grid, FroudeWeightedModulus) {
  const Grid3 g = make_grid(8, 2 * kPi, 0.5);
  EXPECT_DOUBLE_EQ(g.xi_f_sq(g.index(0, 0, 2)), 1.0);
}

TEST(Grid, RejectsBadSizes) {
  EXPECT_THROW(make_grid(7), std::invalid_argument);
  EXPECT_THROW(make_grid(4), std::invalid_argument);
  EXPECT_THROW(make_grid(8, -1.0), std::invalid_argument);
  EXPECT_THROW(make_grid(8, 1.0, 0.0), std::invalid_argument);
}

TEST(Grid, ZeroAndNyquistIdentifiable) {
  const Grid3 g = make_grid(8);
  std::size_t zeros = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.xi_f_sq(k) == 0.0) {
      ++zeros;
      EXPECT_EQ(k, Grid3::zero_mode());
    }
  }
  EXPECT_EQ(zeros, 1u);
  EXPECT_TRUE(g.is_nyquist(g.index(4, 0, 0)));
  EXPECT_FALSE(g.is_nyquist(g.index(3, 5, 1)));
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.is_nyquist(k)) continue;
    const auto f = g.frequencies(k), fc = g.frequencies(g.conjugate_index(k));
    for (int a = 0; a < 3; ++a) EXPECT_EQ(f[static_cast<std::size_t>(a)], -fc[static_cast<std::size_t>(a)]);
  }
}

TEST(Grid, DealiasCutoff) {
  const Grid3 g = make_grid(32);
  EXPECT_LT(3 * g.dealias_cutoff(), 32);
  EXPECT_TRUE(g.retained(g.index(g.dealias_cutoff(), 0, 0)));
  EXPECT_FALSE(g.retained(g.index(g.dealias_cutoff() + 1, 0, 0)));
}

TEST(Transform, SineHasTwoModes) {
  const Grid3 g = make_grid(16);
  const Field s = to_spectral(sample(g, [](const Vec3& x) { return std::sin(x[0]); }));
  int nonzero = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (std::abs(s[k]) > 1e-14) {
      ++nonzero;
      const auto f = g.frequencies(k);
      EXPECT_EQ(std::abs(f[0]), 1);
      EXPECT_EQ(f[1], 0);
      EXPECT_EQ(f[2], 0);
      EXPECT_NEAR(std::abs(s[k]), 0.5, 1e-14);
    }
  }
  EXPECT_EQ(nonzero, 2);
}

TEST(Transform, RoundTripAndParsevalRandom) {
  const Grid3 g = make_grid(16, 3.0, 0.7);
  for (unsigned long long seed = 1; seed <= 100; ++seed) {
    const Field u = random_field(g, seed);
    const Field back = to_physical(to_spectral(u));
    ASSERT_LE(max_abs_diff(back, u) / max_abs(u), 1e-12);
  }
  const Field u = random_field(g, 7);
  const Field s = to_spectral(u);
  double phys = 0.0, spec = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    phys += std::norm(u[k]) * g.cell_volume();
    spec += std::norm(s[k]) * g.volume();
  }
  EXPECT_NEAR(spec / phys, 1.0, 1e-12);
  EXPECT_NEAR(std::pow(norm(s, NormSpec::Lp(2)), 2) / phys, 1.0, 1e-12);
}

TEST(Transform, RepresentationMismatchThrows) {
  const Grid3 g = make_grid(8);
  EXPECT_THROW(transform(Field(g, Rep::physical), Direction::inverse), std::invalid_argument);
  EXPECT_THROW(transform(Field(g, Rep::spectral), Direction::forward), std::invalid_argument);
}

TEST(Multiplier, Identity) {
  const Grid3 g = make_grid(16);
  const Field u = to_spectral(random_field(g, 3));
  const Field v = apply_multiplier(u, [](const Vec3&) { return cplx(1.0); }, 1.0);
  EXPECT_EQ(max_abs_diff(u, v), 0.0);
}

TEST(Multiplier, ModulusOnSingleMode) {
  const Grid3 g = make_grid(16);
  const Field e = single_mode(g, {0, 0, 2}, 1.0);
  const Field m = apply_multiplier(
      e, [](const Vec3& xi) { return cplx(std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2])); }, 0.0);
  EXPECT_LE(max_abs_diff(m, 2.0 * e), 1e-15);
}

TEST(Multiplier, InverseModulusKillsConstant) {
  const Grid3 g = make_grid(8);
  Field c(g, Rep::spectral);
  c[0] = 3.0;
  const Field m = apply_multiplier(
      c, [](const Vec3& xi) { return cplx(1.0 / std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2])); }, 0.0);
  EXPECT_EQ(max_abs(m), 0.0);
}

TEST(Multiplier, NonFiniteSymbolThrows) {
  const Grid3 g = make_grid(8);
  const Field u = to_spectral(random_field(g, 1));
  EXPECT_THROW(apply_multiplier(u, [](const Vec3&) { return cplx(std::nan("")); }, 0.0), std::domain_error);
}

TEST(Multiplier, Composition) {
  const Grid3 g = make_grid(16, 2 * kPi, 0.6);
  const Field u = to_spectral(random_field(g, 11));
  auto m1 = [](const Vec3& xi) { return cplx(1.0 + xi[0] * xi[0], xi[2]); };
  auto m2 = [](const Vec3& xi) { return cplx(std::exp(-0.1 * (xi[1] * xi[1])), 0.0); };
  const Field a = apply_multiplier(apply_multiplier(u, m2, 2.0), m1, 0.5);
  const Field b = apply_multiplier(u, [&](const Vec3& xi) { return m1(xi) * m2(xi); }, 1.0);
  EXPECT_LE(max_abs_diff(a, b) / max_abs(b), 1e-12);
}

TEST(Multiplier, RealSymbolsKeepFieldsReal) {
  const Grid3 g = make_grid(16, 2 * kPi, 0.6);
  const Field u = to_spectral(random_field(g, 4));
  Field w = laplacian(partial(partial(u, 0), 2));
  w = apply_multiplier(w, [](const Vec3& xi) { return cplx(1.0 / (1.0 + xi[2] * xi[2])); }, 0.0);
  EXPECT_LE(imaginary_defect(to_physical(w)), 1e-12);
}

TEST(Norm, SineValues) {
  const Grid3 g = make_grid(32);
  const Field s = sample(g, [](const Vec3& x) { return std::sin(x[0]); });
  EXPECT_NEAR(norm(s, NormSpec::Linf()), 1.0, 1e-3);
  EXPECT_NEAR(std::pow(norm(s, NormSpec::Lp(2)), 2), std::pow(2 * kPi, 3) / 2, 1e-10 * std::pow(2 * kPi, 3));
  EXPECT_NEAR(norm(s, NormSpec::Hdot(1)), norm(s, NormSpec::Lp(2)), 1e-12);
}

TEST(Norm, SobolevOrdering) {
  const Grid3 g = make_grid(16);
  const Field u = to_spectral(random_field(g, 5));
  for (double s : {0.0, 0.5, 1.0, 2.0}) {
    const double h = norm(u, NormSpec::H(s)), hd = norm(u, NormSpec::Hdot(s));
    EXPECT_GE(h, hd * (1 - 1e-14));
    EXPECT_GE(hd, 0.0);
  }
}

TEST(Norm, ErrorsAndLpConsistency) {
  const Grid3 g = make_grid(16);
  const Field u = random_field(g, 6);
  EXPECT_THROW(norm(u, NormSpec::Lp(3.0)), std::invalid_argument);
  Field c(g, Rep::spectral);
  c[0] = 1.0;
  EXPECT_THROW(norm(c, NormSpec::Hdot(0.0)), std::domain_error);
  const double vol = g.volume();
  const double l2 = norm(u, NormSpec::Lp(2)), l4 = norm(u, NormSpec::Lp(4)), linf = norm(u, NormSpec::Linf());
  EXPECT_LE(l2 / std::sqrt(vol), l4 / std::pow(vol, 0.25) * (1 + 1e-12));
  EXPECT_LE(l4 / std::pow(vol, 0.25), linf * (1 + 1e-12));
}

TEST(Field4, DivergenceDefectOfSolenoidalField) {
  const Grid3 g = make_grid(16);
  EXPECT_LE(divergence_defect(smooth_solenoidal(g, 2, 4, 1.0)), 1e-10);
}

TEST(Products, DealiasedProductOfModes) {
  const Grid3 g = make_grid(16);
  const Field a = real_mode(g, {1, 0, 0}, 1.0, 0.0), b = real_mode(g, {0, 2, 0}, 0.0, 1.0);
  const Field p = product(a, b);
  const Field ref = to_spectral(sample(g, [](const Vec3& x) { return std::cos(x[0]) * std::sin(2 * x[1]); }));
  EXPECT_LE(max_abs_diff(p, ref), 1e-15);
}

TEST(Cutoff, PlateausAndMonotone) {
  EXPECT_EQ(chi(0.0), 1.0);
  EXPECT_EQ(chi(0.75), 1.0);
  EXPECT_EQ(chi(4.0 / 3.0), 0.0);
  EXPECT_EQ(chi(2.0), 0.0);
  double prev = 1.0;
  for (double r = 0.75; r <= 1.34; r += 1e-3) {
    EXPECT_LE(chi(r), prev);
    prev = chi(r);
  }
  EXPECT_EQ(phi(0.5), 0.0);
  EXPECT_EQ(phi(3.0), 0.0);
  EXPECT_EQ(psi_band(0.9, 1.0, 4.0), 0.0);
  EXPECT_EQ(psi_band(2.0, 1.0, 4.0), 1.0);
}

TEST(Dump, RoundTripIsExact) {
  const Grid3 g = make_grid(8, 3.5, 0.4);
  const Field u = to_spectral(random_field(g, 9));
  std::stringstream ss;
  write_dump(ss, u);
  const Field v = read_dump(ss);
  EXPECT_EQ(v.grid(), g);
  EXPECT_EQ(v.rep(), Rep::spectral);
  EXPECT_EQ(max_abs_diff(u, v), 0.0);
}

TEST(Params, DerivedViscosities) {
  const PhysParams p{2.0, 0.5, 0.5, 1e-2};
  EXPECT_DOUBLE_EQ(p.nu0(), 0.5);
  EXPECT_DOUBLE_EQ(p.m_visc(), 4.0);
  EXPECT_THROW((PhysParams{0.0, 1.0, 1.0, 1.0}.validate()), std::invalid_argument);
  EXPECT_THROW((PhysParams{1.0, 1.0, 1.5, 1.0}.validate()), std::invalid_argument);
}
