#include "gqg/wave_matrix.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "gqg/cutoff.hpp"
#include "gqg/errors.hpp"
#include "gqg/pseudo_diff.hpp"
#include "gqg/spectral.hpp"

namespace gqg {

Mat4 matrix_L(const Vec3& xi, const PhysParams& p) {
  const double q = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
  Mat4 L = Mat4::Zero();
  L(0, 0) = L(1, 1) = L(2, 2) = -p.nu * q;
  L(3, 3) = -p.nu_prime * q;
  return L;
}

Mat4 matrix_B(const Vec3& xi, const PhysParams& p) {
  const double x1 = xi[0], x2 = xi[1], x3 = xi[2];
  const double q = x1 * x1 + x2 * x2 + x3 * x3;
  if (q == 0.0) throw std::domain_error("B(xi) is undefined at xi = 0");
  const double e = p.eps, F = p.F;
  const double s = 1.0 / (e * q);
  Mat4 B;
  B << -p.nu * q + x1 * x2 * s, (x2 * x2 + x3 * x3) * s, 0.0, x1 * x3 * s / F,
      -(x1 * x1 + x3 * x3) * s, -p.nu * q - x1 * x2 * s, 0.0, x2 * x3 * s / F,
      x2 * x3 * s, -x1 * x3 * s, -p.nu * q, -(x1 * x1 + x2 * x2) * s / F,
      0.0, 0.0, 1.0 / (e * F), -p.nu_prime * q;
  return B;
}

double tau(const Vec3& xi, const PhysParams& p) {
  const double F2 = p.F * p.F;
  const double qF = xi[0] * xi[0] + xi[1] * xi[1] + F2 * xi[2] * xi[2];
  const double w = F2 * xi[2] * xi[2] / qF;
  return 0.5 * p.nu * (1.0 + w) + 0.5 * p.nu_prime * (1.0 - w);
}

AsymptoticEigen asymptotic_eigenvalues(const Vec3& xi, const PhysParams& p) {
  const double q = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
  const double qF = xi[0] * xi[0] + xi[1] * xi[1] + p.F * p.F * xi[2] * xi[2];
  const double t = tau(xi, p);
  const cplx lam(-t * q, std::sqrt(qF) / (p.eps * p.F * std::sqrt(q)));
  return {-p.nu * q, symbol_value(SymbolKind::Gamma, xi, p), lam, std::conj(lam), t};
}

ModeEigen eigen_B(const Vec3& xi, const PhysParams& p) {
  const Mat4 B = matrix_B(xi, p);
  Eigen::EigenSolver<Mat4> es(B);
  if (es.info() != Eigen::Success) throw EigenAmbiguity("eigen solver failed");
  const Eigen::Vector4cd ev = es.eigenvalues();
  const CMat4 V = es.eigenvectors();

  double scale = 1.0;
  for (int i = 0; i < 4; ++i) scale = std::max(scale, std::abs(ev[i]));
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (std::abs(ev[i] - ev[j]) < 1e-6 * scale) {
        throw EigenAmbiguity("eigenvalues of B closer than 1e-6 relative; labels are ambiguous");
      }
    }
  }

  const AsymptoticEigen lead = asymptotic_eigenvalues(xi, p);
  std::array<int, 4> order{};
  // mu0: nearest to -nu |xi|^2
  int i0 = 0;
  for (int i = 1; i < 4; ++i) {
    if (std::abs(ev[i] - lead.mu0) < std::abs(ev[i0] - lead.mu0)) i0 = i;
  }
  std::vector<int> rest;
  for (int i = 0; i < 4; ++i) {
    if (i != i0) rest.push_back(i);
  }
  std::sort(rest.begin(), rest.end(), [&](int a, int b) { return ev[a].imag() > ev[b].imag(); });
  const int il = rest[0], ilb = rest[2], imu = rest[1];
  const double imtol = 1e-10 * scale;
  if (!(ev[il].imag() > imtol) || !(ev[ilb].imag() < -imtol) || std::abs(ev[imu].imag()) > imtol) {
    throw EigenAmbiguity("no conjugate eigenvalue pair separated from the real eigenvalues");
  }
  order = {i0, imu, il, ilb};

  const CMat4 W = V.inverse();
  ModeEigen out;
  out.mu0 = ev[i0].real();
  out.mu = ev[imu];
  out.lambda = ev[il];
  out.lambda_bar = ev[ilb];
  out.tau = lead.tau;
  for (int k = 0; k < 4; ++k) out.projectors[k] = V.col(order[k]) * W.row(order[k]);
  out.residual_D = (out.mu - lead.mu) / (p.eps * p.eps);
  out.residual_E = (out.lambda - lead.lambda) / p.eps;
  Eigen::JacobiSVD<CMat4> svd(V);
  const auto sv = svd.singularValues();
  out.condition = sv(0) / sv(3);
  return out;
}

Mat4 expm_pade(const Mat4& A) { return A.exp(); }

Mat4 expm_B(const Vec3& xi, const PhysParams& p, double h, bool penalized, ExpmRoute route) {
  const double q = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
  Mat4 B;
  if (q == 0.0) {
    // mean flow: no pressure gradient and no diffusion, only the rotation -A/eps
    B.setZero();
    if (penalized) {
      B(0, 1) = 1.0 / p.eps;
      B(1, 0) = -1.0 / p.eps;
      B(2, 3) = -1.0 / (p.eps * p.F);
      B(3, 2) = 1.0 / (p.eps * p.F);
    }
    return expm_pade(h * B);
  }
  if (!penalized) {
    const Mat4 L = matrix_L(xi, p);
    Mat4 E = Mat4::Zero();
    for (int i = 0; i < 4; ++i) E(i, i) = std::exp(h * L(i, i));
    return E;
  }
  B = matrix_B(xi, p);
  if (route == ExpmRoute::eigen) {
    Eigen::EigenSolver<Mat4> es(B);
    if (es.info() == Eigen::Success) {
      const CMat4 V = es.eigenvectors();
      Eigen::JacobiSVD<CMat4> svd(V);
      const auto sv = svd.singularValues();
      if (sv(3) > 0.0 && sv(0) / sv(3) < 1e8) {
        const Eigen::Vector4cd ev = es.eigenvalues();
        Eigen::Vector4cd d;
        for (int i = 0; i < 4; ++i) d[i] = std::exp(h * ev[i]);
        const CMat4 E = V * d.asDiagonal() * V.inverse();
        return E.real();
      }
    }
  }
  return expm_pade(h * B);
}

Truncation Truncation::from_exponents(double eps, double m, double M) {
  return {std::pow(eps, m), std::pow(eps, -M)};
}

double truncation_symbol(const Vec3& xi, double r, double R) {
  const double a = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
  return chi(a / R) * (1.0 - chi(std::abs(xi[2]) / r));
}

bool in_truncation_set(const Vec3& xi, double r, double R) {
  const double a = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
  return a <= R && std::abs(xi[2]) >= r;
}

Field truncate(const Field& f, double r, double R) {
  if (!(r > 0.0) || !(r < R)) throw std::invalid_argument("truncation requires 0 < r < R");
  const Grid3& g = f.grid();
  std::vector<double> t(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) t[k] = truncation_symbol(g.xi(k), r, R);
  return apply_table(f, t);
}

Field4 truncate(const Field4& f, double r, double R) {
  return Field4(truncate(f[0], r, R), truncate(f[1], r, R), truncate(f[2], r, R), truncate(f[3], r, R));
}

Field4 mode_projector(int i, const Field4& f, const PhysParams& p, const Truncation& tr) {
  if (i < 2 || i > 4) throw std::invalid_argument("mode projector index must be 2, 3 or 4");
  const Field4 t = truncate(to_spectral(f), tr.r, tr.R);
  const Grid3& g = t.grid();
  Field4 out(g, Rep::spectral);
  for (std::size_t k = 1; k < g.size(); ++k) {
    const Vec3 xi = g.xi(k);
    if (truncation_symbol(xi, tr.r, tr.R) == 0.0) continue;
    const ModeEigen me = eigen_B(xi, p);
    const CMat4& P = me.projectors[static_cast<std::size_t>(i - 1)];
    Eigen::Vector4cd u;
    for (int c = 0; c < 4; ++c) u[c] = t[c][k];
    const Eigen::Vector4cd w = P * u;
    for (int c = 0; c < 4; ++c) out[c][k] = w[c];
  }
  return out;
}

RegimeCheck check_regime(double m, double M) {
  std::ostringstream msg;
  bool ok = true;
  if (!(m > 0.0) || !(M > 0.0)) {
    ok = false;
    msg << "m and M must be positive; ";
  }
  if (!(M < 0.25)) {
    ok = false;
    msg << "M = " << M << " violates M < 1/4; ";
  }
  if (!(3.0 * M + m < 1.0)) {
    ok = false;
    msg << "3M + m = " << 3.0 * M + m << " violates 3M + m < 1; ";
  }
  return {ok, msg.str()};
}

void write_eigen_csv(std::ostream& os, const std::vector<Vec3>& xis, const PhysParams& p) {
  os << "xi1,xi2,xi3,mu0,mu_re,mu_im,lambda_re,lambda_im,lambda_bar_re,lambda_bar_im,tau,D_re,D_im,E_re,E_im,"
        "status\r\n";
  os << std::setprecision(17);
  for (const Vec3& xi : xis) {
    os << xi[0] << ',' << xi[1] << ',' << xi[2] << ',';
    try {
      const ModeEigen m = eigen_B(xi, p);
      os << m.mu0 << ',' << m.mu.real() << ',' << m.mu.imag() << ',' << m.lambda.real() << ',' << m.lambda.imag()
         << ',' << m.lambda_bar.real() << ',' << m.lambda_bar.imag() << ',' << m.tau << ',' << m.residual_D.real()
         << ',' << m.residual_D.imag() << ',' << m.residual_E.real() << ',' << m.residual_E.imag() << ",ok\r\n";
    } catch (const EigenAmbiguity&) {
      os << ",,,,,,,,,,,,ambiguous\r\n";
    }
  }
}

}  // namespace gqg
