/// @file test_wave_matrix.cpp
/// @brief The mode matrix B, its eigenstructure, exponentials and the
/// frequency truncation.

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "gqg/errors.hpp"
#include "gqg/oracles.hpp"
#include "gqg/pseudo_diff.hpp"
#include "gqg/qg.hpp"
#include "gqg/report.hpp"
#include "gqg/spectral.hpp"
#include "gqg/wave_matrix.hpp"

using namespace gqg;

namespace {
constexpr double kPi = std::numbers::pi;
double l2(const Field4& f) { return norm(f, NormSpec::Lp(2)); }

std::vector<Vec3> truncated_sample(const Truncation& tr, int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-tr.R, tr.R);
  std::vector<Vec3> out;
  while (static_cast<int>(out.size()) < count) {
    const Vec3 xi{u(rng), u(rng), u(rng)};
    if (in_truncation_set(xi, tr.r, tr.R)) out.push_back(xi);
  }
  return out;
}
}  // namespace

TEST(MatrixB, VerticalModeByHand) {
  const PhysParams p{1.2, 0.5, 1.0, 0.01};
  Mat4 ref;
  ref << -1.2, 100, 0, 0, -100, -1.2, 0, 0, 0, 0, -1.2, 0, 0, 0, 100, -0.5;
  EXPECT_LE((matrix_B({0, 0, 1}, p) - ref).norm(), 1e-12);
  EXPECT_THROW(matrix_B({0, 0, 0}, p), std::domain_error);
}

TEST(MatrixB, SkewPartScalesWithInverseEps) {
  const Vec3 xi{0.7, -1.1, 0.4};
  PhysParams a{1.0, 0.3, 0.6, 0.1}, b = a;
  b.eps = 0.003;
  const Mat4 sa = (matrix_B(xi, a) - matrix_L(xi, a)) * a.eps;
  const Mat4 sb = (matrix_B(xi, b) - matrix_L(xi, b)) * b.eps;
  EXPECT_LE((sa - sb).norm(), 1e-13);
  // the penalization is energy neutral on divergence-free amplitudes
  const Eigen::Vector3d x(xi[0], xi[1], xi[2]);
  const Eigen::Vector3d t = x.cross(Eigen::Vector3d(0.2, 0.9, -0.4));
  const Eigen::Vector4d u(t(0), t(1), t(2), 0.7);
  EXPECT_LE(std::abs(u.dot(sa * u)), 1e-14 * u.squaredNorm() * sa.norm());
}

TEST(MatrixB, HorizontalModeDiagonal) {
  const PhysParams p{1.0, 0.25, 0.7, 0.05};
  const Mat4 B = matrix_B({1, 0, 0}, p);
  EXPECT_DOUBLE_EQ(B(0, 0), -1.0);
  EXPECT_DOUBLE_EQ(B(1, 1), -1.0);
  EXPECT_DOUBLE_EQ(B(2, 2), -1.0);
  EXPECT_DOUBLE_EQ(B(3, 3), -0.25);
}

TEST(Eigen, VerticalModeSpectrum) {
  const PhysParams p{1.0, 0.5, 1.0, 0.01};
  const ModeEigen m = eigen_B({0, 0, 1}, p);
  EXPECT_NEAR(m.mu0, -1.0, 1e-10);
  EXPECT_NEAR(std::abs(m.mu - cplx(-0.5)), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(m.lambda - cplx(-1.0, 100.0)), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(m.lambda_bar - cplx(-1.0, -100.0)), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(m.residual_D), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(m.residual_E), 0.0, 1e-8);
}

TEST(Eigen, TauValues) {
  const PhysParams p{1.0, 0.4, 0.6, 1.0};
  EXPECT_DOUBLE_EQ(tau({1, 0, 0}, p), 0.7);
  EXPECT_DOUBLE_EQ(tau({0, 0, 1}, p), 1.0);
}

TEST(Eigen, AsymptoticForms) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 5);
  const PhysParams p{1.0, 0.4, 0.6, 0.01}, one{1.0, 0.4, 1.0, 0.01};
  for (int i = 0; i < 1000; ++i) {
    const Vec3 xi{u(rng), u(rng), u(rng)};
    ASSERT_EQ(asymptotic_eigenvalues(xi, p).mu, symbol_value(SymbolKind::Gamma, xi, p));
    ASSERT_NEAR(asymptotic_eigenvalues(xi, one).lambda.imag(), 100.0, 1e-10);
    ASSERT_GE(tau(xi, p), p.nu0());
  }
  EXPECT_DOUBLE_EQ(asymptotic_eigenvalues({0, 1, 0}, p).mu0, -1.0);
}

TEST(Eigen, TraceProjectorsAndConditioning) {
  const PhysParams p{1.0, 0.5, 0.6, 1e-3};
  const Truncation tr = Truncation::from_exponents(p.eps, 0.1, 0.2);
  for (const Vec3& xi : truncated_sample(tr, 1000, 7)) {
    const ModeEigen m = eigen_B(xi, p);
    const cplx sum = m.mu0 + m.mu + m.lambda + m.lambda_bar;
    const double tr_b = matrix_B(xi, p).trace();
    ASSERT_LE(std::abs(sum - tr_b), 1e-10 * std::abs(tr_b));
    CMat4 total = CMat4::Zero();
    for (int i = 0; i < 4; ++i) {
      total += m.projectors[static_cast<std::size_t>(i)];
      for (int j = 0; j < 4; ++j) {
        const CMat4 prod = m.projectors[static_cast<std::size_t>(i)] * m.projectors[static_cast<std::size_t>(j)];
        const CMat4 ref = i == j ? m.projectors[static_cast<std::size_t>(i)] : CMat4::Zero();
        const double scale = std::max(1.0, m.projectors[static_cast<std::size_t>(i)].norm() *
                                                m.projectors[static_cast<std::size_t>(j)].norm());
        ASSERT_LE((prod - ref).norm(), 1e-8 * scale);
      }
    }
    ASSERT_LE((total - CMat4::Identity()).norm(), 1e-10);
    ASSERT_LT(m.condition, 1e6);
  }
}

TEST(Eigen, AmbiguityIsReported) {
  // nu = nu' and F = 1 make mu0 and mu coincide at every mode
  const PhysParams p{1.0, 1.0, 1.0, 0.1};
  EXPECT_THROW(eigen_B({0.3, 0.4, 1.0}, p), EigenAmbiguity);
}

TEST(Eigen, RemainderSlopes) {
  const std::vector<double> eps{1e-2, 3e-3, 1e-3, 3e-4};
  const std::vector<Vec3> xis = truncated_sample(Truncation::from_exponents(1e-2, 0.1, 0.2), 200, 11);
  std::vector<double> le, me;
  for (double e : eps) {
    const PhysParams p{1.0, 0.5, 0.6, e};
    double a = 0, b = 0;
    for (const Vec3& xi : xis) {
      const ModeEigen m = eigen_B(xi, p);
      a = std::max(a, std::abs(m.residual_E) * e);
      b = std::max(b, std::abs(m.residual_D) * e * e);
    }
    le.push_back(a);
    me.push_back(b);
  }
  EXPECT_NEAR(fit_loglog("lambda", eps, le).slope, 1.0, 0.2);
  EXPECT_NEAR(fit_loglog("mu", eps, me).slope, 2.0, 0.3);
}

TEST(Exponential, RoutesMatchTaylorOracle) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3, 3);
  const PhysParams p{1.0, 0.3, 0.7, 1e-2};
  for (int i = 0; i < 200; ++i) {
    const Vec3 xi{u(rng), u(rng), u(rng)};
    const Mat4 ref = expm_taylor(1e-3 * matrix_B(xi, p));
    ASSERT_LE((expm_B(xi, p, 1e-3) - ref).norm() / ref.norm(), 1e-12);
    ASSERT_LE((expm_B(xi, p, 1e-3, true, ExpmRoute::eigen) - ref).norm() / ref.norm(), 1e-8);
  }
  const Mat4 z = expm_B({0, 0, 0}, p, 0.5);
  EXPECT_LE((z * z.transpose() - Mat4::Identity()).norm(), 1e-13);
  const Mat4 L = expm_B({1, 2, 0}, p, 0.1, false);
  EXPECT_NEAR(L(0, 0), std::exp(-0.5), 1e-15);
  EXPECT_NEAR(L(3, 3), std::exp(-0.15), 1e-15);
}

TEST(Truncation, PlateauValues) {
  const Grid3 g = make_grid(32);
  const Field e = single_mode(g, {0, 0, 2}, 1.0);
  EXPECT_LE(rel_l2(truncate(e, 1.0, 4.0), e), 0.0);
  const Grid3 gl = make_grid(32, 4 * kPi);
  const Field h = single_mode(gl, {0, 0, 1}, 1.0);  // xi3 = 0.5
  EXPECT_EQ(norm(truncate(h, 1.0, 4.0), NormSpec::Lp(2)), 0.0);
  const Field big = single_mode(g, {0, 0, 8}, 1.0);
  EXPECT_EQ(norm(truncate(big, 1.0, 4.0), NormSpec::Lp(2)), 0.0);
  EXPECT_THROW(truncate(e, 2.0, 1.0), std::invalid_argument);
  EXPECT_TRUE(in_truncation_set({0, 0, 2}, 1, 4));
  EXPECT_FALSE(in_truncation_set({3, 0, 0.5}, 1, 4));
}

TEST(Projectors, EigenmodeAndResolutionOfIdentity) {
  const PhysParams p{1.0, 0.5, 0.6, 1e-2};
  const Grid3 g = make_grid(16, 2 * kPi, p.F);
  const Truncation tr{0.5, 6.0};
  // an eigenvector of lambda at one mode and its conjugate
  const std::size_t k = g.index(1, 2, 1);
  const ModeEigen m = eigen_B(g.xi(k), p);
  Eigen::Vector4cd seed(1.0, 0.5, -0.2, 0.3);
  const Eigen::Vector4cd v = m.projectors[2] * seed;
  Field4 f(g, Rep::spectral);
  const std::size_t kc = g.conjugate_index(k);
  for (int a = 0; a < 4; ++a) {
    f[a][k] = v(a);
    f[a][kc] = std::conj(v(a));
  }
  const double trunc = truncation_symbol(g.xi(k), tr.r, tr.R);
  const Field4 fl = mode_projector(3, f, p, tr), fb = mode_projector(4, f, p, tr), fm = mode_projector(2, f, p, tr);
  EXPECT_LE(rel_l2(fl + fb, trunc * f), 1e-8);
  EXPECT_LE(l2(fm), 1e-8 * l2(f));

  const Field4 r = truncate(smooth_solenoidal(g, 4, 5, 1.0), tr.r, tr.R);
  const Field4 sum = mode_projector(2, r, p, tr) + mode_projector(3, r, p, tr) + mode_projector(4, r, p, tr);
  const Field4 rt = truncate(r, tr.r, tr.R);
  EXPECT_LE(rel_l2(sum, rt), 1e-8);
}

TEST(Regime, Guards) {
  EXPECT_TRUE(check_regime(0.1, 0.2).ok);
  EXPECT_FALSE(check_regime(0.1, 0.3).ok);
  EXPECT_FALSE(check_regime(0.5, 0.2).ok);
  EXPECT_FALSE(check_regime(0.1, 0.3).message.empty());
}

TEST(EigenCsv, MarksAmbiguousModes) {
  std::ostringstream os;
  write_eigen_csv(os, {{0.3, 0.4, 1.0}, {0, 0, 1}}, PhysParams{1.0, 1.0, 1.0, 0.1});
  EXPECT_NE(os.str().find("ambiguous"), std::string::npos);
  EXPECT_NE(os.str().find("\r\n"), std::string::npos);
}
