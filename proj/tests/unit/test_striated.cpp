/// @file test_striated.cpp
/// @brief Advected vector families, directional derivatives and the
/// admissibility functional.

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "gqg/errors.hpp"
#include "gqg/oracles.hpp"
#include "gqg/spectral.hpp"
#include "gqg/striated.hpp"

using namespace gqg;

namespace {
constexpr double kPi = std::numbers::pi;

Field3 constant(const Grid3& g, const Vec3& e) {
  Field3 f{Field(g, Rep::spectral), Field(g, Rep::spectral), Field(g, Rep::spectral)};
  for (std::size_t i = 0; i < 3; ++i) f[i][0] = e[i];
  return f;
}
Field3 zero3(const Grid3& g) { return constant(g, {0, 0, 0}); }
Field3 random3(const Grid3& g, unsigned long long seed) {
  return to_spectral(Field3{random_field(g, seed), random_field(g, seed + 1), random_field(g, seed + 2)});
}
double dist(const Field3& a, const Field3& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < 3; ++i) d = std::max(d, norm(a[i] - b[i], NormSpec::Linf()));
  return d;
}
}  // namespace

TEST(Advect, ZeroVelocityKeepsFamily) {
  const Grid3 g = make_grid(16);
  const VectorFamily X{{random3(g, 1), random3(g, 4)}, 0.0};
  const VectorFamily Y = advect_family(X, std::vector<Field3>(11, zero3(g)), 1e-2);
  EXPECT_NEAR(Y.t, 0.1, 1e-15);
  for (std::size_t l = 0; l < 2; ++l) EXPECT_LE(dist(Y.fields[l], X.fields[l]), 1e-14);
  EXPECT_THROW(advect_family(X, {zero3(g)}, 1e-2), std::invalid_argument);
}

TEST(Advect, CellularFlowMatchesCharacteristics) {
  const Grid3 g = make_grid(16);
  const Field3 v = to_spectral(Field3{sample(g, [](const Vec3& x) { return -std::sin(x[1]); }),
                                      sample(g, [](const Vec3& x) { return std::sin(x[0]); }), Field(g, Rep::physical)});
  auto vel = [](const Vec3& x) { return Vec3{-std::sin(x[1]), std::sin(x[0]), 0.0}; };
  auto grad = [](const Vec3& x) {
    Mat3 G{};
    G[0][1] = -std::cos(x[1]);
    G[1][0] = std::cos(x[0]);
    return G;
  };
  const VectorFamily X{{constant(g, {1, 0, 0}), constant(g, {1, 0, 0})}, 0.0};
  const double dt = 1e-3, T = 0.1;
  const VectorFamily Y = advect_family(X, std::vector<Field3>(101, v), dt);
  const Field3 y = to_physical(Y.fields[0]);
  // near the origin grad v is the rotation generator, so X = (cos t, sin t, 0)
  EXPECT_NEAR(y[0][0].real(), std::cos(T), 1e-6);
  EXPECT_NEAR(y[1][0].real(), std::sin(T), 1e-6);
  for (std::size_t k : {g.index(3, 5, 1), g.index(8, 2, 7), g.index(12, 11, 4)}) {
    const Vec3 ref = lagrangian_stretch(vel, grad, g.position(k), T, {1, 0, 0}, 2000);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(y[i][k].real(), ref[i], 1e-6);
  }
  EXPECT_EQ(dist(Y.fields[0], Y.fields[1]), 0.0);
}

TEST(Advect, CflViolation) {
  const Grid3 g = make_grid(16);
  const Field3 v = to_spectral(Field3{sample(g, [](const Vec3& x) { return 100 * std::sin(x[1]); }),
                                      Field(g, Rep::physical), Field(g, Rep::physical)});
  const VectorFamily X{{constant(g, {1, 0, 0}), constant(g, {0, 1, 0})}, 0.0};
  EXPECT_THROW(advect_family(X, std::vector<Field3>(2, v), 0.1), CflViolation);
}

TEST(StriatedDerivative, Examples) {
  const Grid3 g = make_grid(16);
  const Field w = to_spectral(random_field(g, 7));
  EXPECT_LE(rel_l2(striated_derivative(constant(g, {1, 0, 0}), w), partial(w, 0)), 1e-15);
  const Field phi = to_spectral(random_field(g, 8));
  const Field3 curl_free_div{partial(phi, 1), -1.0 * partial(phi, 0), Field(g, Rep::spectral)};
  Field c(g, Rep::spectral);
  c[0] = 2.0;
  EXPECT_LE(norm(striated_derivative(curl_free_div, c), NormSpec::Lp(2)),
            1e-14 * norm(product(curl_free_div[0], c), NormSpec::Lp(2)));
  const Field3 Y = random3(g, 10);
  Field rhs = product(w, divergence(Y));
  for (std::size_t j = 0; j < 3; ++j) rhs += product(Y[j], partial(w, static_cast<int>(j)));
  EXPECT_LE(rel_l2(striated_derivative(Y, w), rhs), 1e-10);
}

TEST(Admissibility, HandValues) {
  const Grid3 g = make_grid(8);
  const VectorFamily E{{constant(g, {1, 0, 0}), constant(g, {0, 1, 0}), constant(g, {0, 0, 1})}, 0.0};
  EXPECT_EQ(admissibility(E), 1.0);
  const VectorFamily P{{constant(g, {1, 0, 0}), constant(g, {1, 0, 0})}, 0.0};
  EXPECT_EQ(admissibility(P), std::numeric_limits<double>::infinity());
  const VectorFamily E2{{constant(g, {2, 0, 0}), constant(g, {0, 2, 0}), constant(g, {0, 0, 2})}, 0.0};
  EXPECT_DOUBLE_EQ(admissibility(E2), 0.5);
  EXPECT_THROW(admissibility_field(VectorFamily{{constant(g, {1, 0, 0})}, 0.0}), std::invalid_argument);
}

TEST(StriatedNorm, FiniteForSmoothData) {
  const Grid3 g = make_grid(16);
  const VectorFamily E{{constant(g, {1, 0, 0}), constant(g, {0, 1, 0}), constant(g, {0, 0, 1})}, 0.0};
  const Field w = to_spectral(gaussian_bump(g, {kPi, kPi, kPi}, 0.8));
  const double s = striated_norm(w, E, 0.5);
  EXPECT_TRUE(std::isfinite(s));
  EXPECT_GE(s, norm(w, NormSpec::Linf()) + 1.0);
}
