/// @file test_littlewood_paley.cpp
/// @brief Dyadic blocks, Besov norms, Bernstein inequalities and the Bony
/// decomposition.

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "gqg/cutoff.hpp"
#include "gqg/field.hpp"
#include "gqg/littlewood_paley.hpp"
#include "gqg/oracles.hpp"
#include "gqg/spectral.hpp"

using namespace gqg;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
double l2(const Field& f) { return norm(f, NormSpec::Lp(2)); }
double max_abs(const Field& f) {
  double m = 0.0;
  for (const cplx& c : f.values()) m = std::max(m, std::abs(c));
  return m;
}
}  // namespace

TEST(Blocks, PartitionOfUnity) {
  for (bool homogeneous : {false, true}) {
    const Grid3 g = make_grid(32, 2 * kPi, 0.7);
    const Field u = to_spectral(random_field(g, 1));
    const DyadicRange r = dyadic_range(g, homogeneous);
    Field sum(g, Rep::spectral);
    for (int q = r.q_min; q <= r.q_max; ++q) sum += dyadic_block(u, q, BlockKind::delta, homogeneous);
    EXPECT_LE(l2(sum - u), 1e-12 * l2(u)) << "homogeneous=" << homogeneous;
    EXPECT_THROW(dyadic_block(u, r.q_max + 2, BlockKind::delta, homogeneous), std::out_of_range);
  }
}

TEST(Blocks, LowModeSitsInFirstBlock) {
  const Grid3 g = make_grid(16, 4 * kPi);  // frequency 1 is |xi| = 1/2
  const Field u = real_mode(g, {1, 0, 0}, 1.0, 0.0);
  EXPECT_EQ(rel_l2(dyadic_block(u, -1, BlockKind::delta, false), u), 0.0);
  for (int q = 0; q <= dyadic_range(g, false).q_max; ++q) {
    EXPECT_EQ(max_abs(dyadic_block(u, q, BlockKind::delta, false)), 0.0);
  }
}

TEST(Blocks, QuasiOrthogonality) {
  const Grid3 g = make_grid(32);
  const Field u = to_spectral(random_field(g, 2));
  const DyadicRange r = dyadic_range(g, false);
  for (int j = r.q_min; j <= r.q_max; ++j) {
    for (int l = j + 2; l <= r.q_max; ++l) {
      ASSERT_EQ(max_abs(dyadic_block(dyadic_block(u, j, BlockKind::delta, false), l, BlockKind::delta, false)), 0.0);
    }
  }
}

TEST(Blocks, LowPassIsPartialSum) {
  const Grid3 g = make_grid(32);
  const Field u = to_spectral(random_field(g, 3));
  for (int q = 0; q <= 4; ++q) {
    Field sum(g, Rep::spectral);
    for (int p = -1; p <= q - 1; ++p) sum += dyadic_block(u, p, BlockKind::delta, false);
    EXPECT_LE(l2(sum - dyadic_block(u, q, BlockKind::s_low, false)), 1e-13 * l2(u));
  }
  EXPECT_EQ(max_abs(dyadic_block(u, -1, BlockKind::s_low, false)), 0.0);
}

TEST(Besov, LowModeWeight) {
  const Grid3 g = make_grid(16, 4 * kPi);
  const Field u = real_mode(g, {1, 0, 0}, 1.0, 0.0);
  const double linf = norm(u, NormSpec::Linf());
  for (double s : {-1.0, 0.0, 0.5, 2.0}) {
    EXPECT_NEAR(besov_norm(u, {s, kInf, kInf, false}).value / linf, std::pow(2.0, -s), 1e-14);
  }
  EXPECT_EQ(besov_norm(Field(g, Rep::spectral), {0.5, 2, 2, false}).value, 0.0);
}

TEST(Besov, SFormEquivalenceForNegativeRegularity) {
  const Grid3 g = make_grid(32);
  const Field u = to_spectral(random_field(g, 4));
  for (double p : {1.0, 2.0, kInf}) {
    const BesovNorm b = besov_norm(u, {-0.5, p, kInf, false});
    EXPECT_GE(b.s_form / b.value, 0.25);
    EXPECT_LE(b.s_form / b.value, 4.0);
  }
  EXPECT_TRUE(std::isnan(besov_norm(u, {0.5, 2, 2, false}).s_form));
}

TEST(Besov, ErrorsAndHolder) {
  const Grid3 g = make_grid(16);
  const Field u = to_spectral(random_field(g, 5));
  EXPECT_THROW(besov_norm(u, {0.0, 3.0, 2.0, false}), std::invalid_argument);
  EXPECT_THROW(besov_norm(u, {0.0, 2.0, 4.0, false}), std::invalid_argument);
  Field c = u;
  c[0] = 1.0;
  EXPECT_THROW(besov_norm(c, {-0.5, 2.0, 2.0, true}), std::domain_error);
  EXPECT_DOUBLE_EQ(holder_norm(u, 0.5), besov_norm(u, {0.5, kInf, kInf, false}).value);
}

TEST(Besov, TildeNormOfConstantTrajectory) {
  const Grid3 g = make_grid(16);
  const Field u = to_spectral(random_field(g, 6));
  const std::vector<Field> traj(5, u);
  const std::vector<double> t{0.0, 0.25, 0.5, 0.75, 1.0};
  // constant in time: L^r_t over [0, 1] equals the spatial norm
  EXPECT_NEAR(tilde_norm(traj, t, 0.5, 2.0, 2.0) / besov_norm(u, {0.5, 2.0, kInf, false}).value, 1.0, 1e-12);
}

TEST(Bernstein, StableAcrossScaleAndResolution) {
  std::vector<double> c;
  for (int n : {16, 32, 64}) {
    const Grid3 g = make_grid(n);
    const Field u = to_spectral(random_field(g, 7));
    for (int q = 0; q <= dyadic_range(g, false).q_max - 2; ++q) {
      for (double p : {2.0, kInf}) {
        const double b = bernstein_ratio(u, q, p);
        if (std::isfinite(b)) c.push_back(b);
      }
    }
  }
  ASSERT_GE(c.size(), 6u);
  const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
  EXPECT_LE(*hi / *lo, 4.0);
}

TEST(Bony, ConstantFactor) {
  const Grid3 g = make_grid(32);
  const Field v = to_spectral(random_field(g, 8));
  Field one(g, Rep::spectral);
  one[0] = 1.0;
  const Bony b = bony_decompose(one, v);
  EXPECT_EQ(max_abs(b.T_g_f), 0.0);
  EXPECT_LE(l2(b.T_f_g + b.remainder - v), 1e-10 * l2(v));
}

TEST(Bony, ReconstructionAndAnnulusSupport) {
  const Grid3 g = make_grid(32);
  const Field f = to_spectral(random_field(g, 9)), h = to_spectral(random_field(g, 10));
  const Bony b = bony_decompose(f, h);
  const Field prod = product(f, h);
  EXPECT_LE(l2(b.T_f_g + b.T_g_f + b.remainder - prod), 1e-10 * l2(prod));
  for (int q = 1; q <= dyadic_range(g, false).q_max; ++q) {
    const Field t = paraproduct_term(f, h, q);
    double outside = 0.0, total = 0.0;
    const double lo = std::ldexp(1.0, q) / 12.0, hi = std::ldexp(10.0 / 3.0, q);
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double a = std::sqrt(g.xi_sq(k)), m = std::norm(t[k]);
      total += m;
      if (a < lo || a > hi) outside += m;
    }
    if (total > 0) {
      EXPECT_LE(std::sqrt(outside / total), 1e-10) << "q=" << q;
    }
  }
  EXPECT_THROW(bony_decompose(f, to_spectral(random_field(make_grid(16), 1))), std::invalid_argument);
}

TEST(Bernstein, AnisotropicRatioStableAcrossResolutions) {
  for (const auto& [r, R] : {std::pair{1.0, 3.0}, std::pair{2.0, 3.5}, std::pair{0.5, 2.5}}) {
    std::vector<double> ratios;
    for (int n : {16, 32, 64}) {
      const Grid3 g = make_grid(n);
      std::vector<double> tab(g.size());
      for (std::size_t k = 0; k < g.size(); ++k) {
        tab[k] = chi(std::sqrt(g.xi_sq(k)) / R) * chi(std::abs(g.xi(k)[2]) / r);
      }
      const Field f = apply_table(to_spectral(random_field(g, 12)), tab);
      ratios.push_back(norm(f, NormSpec::Linf()) / (std::sqrt(R * R * r) * l2(f)));
    }
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    EXPECT_LE(*hi / *lo, 2.0);
  }
}
