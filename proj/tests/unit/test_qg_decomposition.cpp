/// @file test_qg_decomposition.cpp
/// @brief Potential vorticity, Biot-Savart inversion and the Q/P split.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "gqg/field.hpp"
#include "gqg/oracles.hpp"
#include "gqg/pseudo_diff.hpp"
#include "gqg/qg.hpp"
#include "gqg/spectral.hpp"

using namespace gqg;

namespace {
constexpr double kPi = std::numbers::pi;
double l2(const Field& f) { return norm(f, NormSpec::Lp(2)); }
double l2(const Field4& f) { return norm(f, NormSpec::Lp(2)); }

Field4 from_components(const Grid3& g, const std::array<std::function<double(const Vec3&)>, 4>& c) {
  return to_spectral(Field4(sample(g, c[0]), sample(g, c[1]), sample(g, c[2]), sample(g, c[3])));
}
auto zero = [](const Vec3&) { return 0.0; };
}  // namespace

class Decomp : public ::testing::Test {
 protected:
  PhysParams p{1.0, 0.4, 0.6, 1.0};
  Grid3 g = make_grid(32, 2 * kPi, 0.6);
};

TEST_F(Decomp, PotentialVorticityHandExamples) {
  const Field4 shear = from_components(g, {[](const Vec3& x) { return std::sin(x[2]); }, zero, zero, zero});
  EXPECT_LE(l2(potential_vorticity(shear, p)), 1e-14);

  const Field4 strat = from_components(g, {zero, zero, zero, [](const Vec3& x) { return std::cos(x[2]); }});
  const Field expect = to_spectral(sample(g, [&](const Vec3& x) { return p.F * std::sin(x[2]); }));
  EXPECT_LE(rel_l2(potential_vorticity(strat, p), expect), 1e-14);

  const Field phi = to_spectral(sample(g, [](const Vec3& x) { return std::sin(x[0]) * std::sin(x[1]) * std::sin(x[2]); }));
  const Field4 U(-1.0 * partial(phi, 1), partial(phi, 0), Field(g, Rep::spectral), -p.F * partial(phi, 2));
  EXPECT_LE(rel_l2(potential_vorticity(U, p), -(2.0 + p.F * p.F) * phi), 1e-13);
  EXPECT_EQ(potential_vorticity(U, p)[0], cplx(0.0));
}

TEST_F(Decomp, BiotSavartHandExamplesAndInverse) {
  EXPECT_EQ(l2(biot_savart(Field(g, Rep::spectral), p)), 0.0);
  const Field w = to_spectral(sample(g, [](const Vec3& x) { return std::sin(x[2]); }));
  const Field4 ref = from_components(g, {zero, zero, zero, [&](const Vec3& x) { return std::cos(x[2]) / p.F; }});
  EXPECT_LE(rel_l2(biot_savart(w, p), ref), 1e-14);
  const Field r = to_spectral(random_field(g, 2));
  const Field4 U = biot_savart(r, p);
  EXPECT_LE(rel_l2(potential_vorticity(U, p), r), 1e-12);
  EXPECT_LE(divergence_defect(U), 1e-10);
  Field m = r;
  m[0] = 1.0;
  EXPECT_THROW(biot_savart(m, p), std::domain_error);
}

TEST_F(Decomp, HandSplits) {
  const Field4 Uq = biot_savart(to_spectral(random_field(g, 3)), p);
  Decomposition d = decompose(Uq, p);
  EXPECT_LE(rel_l2(d.qg, Uq), 1e-13);
  EXPECT_LE(l2(d.osc), 1e-13 * l2(Uq));

  const Field4 shear = from_components(g, {[](const Vec3& x) { return std::sin(x[2]); }, zero, zero, zero});
  d = decompose(shear, p);
  EXPECT_LE(l2(d.qg), 1e-14 * l2(shear));
  EXPECT_LE(rel_l2(d.osc, shear), 1e-14);

  const Field4 strat = from_components(g, {zero, zero, zero, [](const Vec3& x) { return std::cos(x[2]); }});
  d = decompose(strat, p);
  EXPECT_LE(rel_l2(d.qg, strat), 1e-14);
  EXPECT_LE(l2(d.osc), 1e-14 * l2(strat));
}

TEST_F(Decomp, IdempotenceAndOrthogonalityOnRandomFields) {
  for (unsigned long long seed = 1; seed <= 100; ++seed) {
    const Field4 U = to_spectral(random_field4(g, 10 * seed));
    const Decomposition d = decompose(U, p);
    const Decomposition dq = decompose(d.qg, p), dp = decompose(d.osc, p);
    ASSERT_LE(rel_l2(dq.qg, d.qg), 1e-12);
    ASSERT_LE(l2(dp.qg), 1e-12 * l2(d.osc));
    ASSERT_LE(rel_l2(d.qg + d.osc, U), 1e-15);
    const Field4 Ul = leray_project(U);
    const Decomposition dl = decompose(Ul, p);
    const Field4 AU = skew_A(Ul, p);
    for (double s : {0.0, 0.5, 1.0}) {
      const double nq = std::sqrt(inner(d.qg, d.qg, s)), no = std::sqrt(inner(d.osc, d.osc, s));
      ASSERT_LE(std::abs(inner(d.qg, d.osc, s)), 1e-10 * nq * no);
      const double nol = std::sqrt(inner(dl.osc, dl.osc, s));
      ASSERT_LE(std::abs(inner(AU, dl.osc, s)), 1e-10 * std::sqrt(inner(AU, AU, s)) * nol);
    }
  }
}

TEST_F(Decomp, TransportAndDiffusionCompatibility) {
  const Field w = to_spectral(random_field(g, 8));
  const Field4 U = biot_savart(w, p);
  const Field3 v = velocity(U);
  const Field lhs = transport(v, w);
  EXPECT_LE(rel_l2(potential_vorticity(transport(v, U), p), lhs), 1e-8);
  EXPECT_LE(rel_l2(decompose(diffusion_L(U, p), p).qg, apply_gamma(U, p)), 1e-10);
}
