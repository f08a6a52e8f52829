#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "gqg/pseudo_diff.hpp"
#include "gqg/spectral.hpp"

namespace gqg {
namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w) {
  x.assign(m, 0.0);
  w.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (m + 0.5));
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = m * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    double p0 = 1.0, p1 = z;
    for (int k = 2; k <= m; ++k) {
      const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = m * (z * p1 - p0) / (z * z - 1.0);
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

// Kernel mass outside the box [-a, a]^3:
// F^-2 * int_{S^2} K1(w) / r_box(w) dw, K1(w) = -2C(1 - 4 w3^2), in z = (y1, y2, y3/F).
double kernel_mass_outside_box(double a, double F, double C) {
  std::vector<double> x, w;
  const int nt = 256, np = 512;
  gauss_legendre(nt, x, w);
  double total = 0.0;
  for (int i = 0; i < nt; ++i) {
    const double c = x[i], s = std::sqrt(1.0 - c * c);
    double ring = 0.0;
    for (int j = 0; j < np; ++j) {
      const double ph = 2.0 * kPi * (j + 0.5) / np;
      const double w1 = std::abs(s * std::cos(ph)), w2 = std::abs(s * std::sin(ph)), w3 = std::abs(c);
      double r = std::numeric_limits<double>::infinity();
      if (w1 > 0) r = std::min(r, a / w1);
      if (w2 > 0) r = std::min(r, a / w2);
      if (w3 > 0) r = std::min(r, (a / F) / w3);
      ring += -2.0 * C * (1.0 - 4.0 * c * c) / r;
    }
    total += w[i] * ring * (2.0 * kPi / np);
  }
  return total / (F * F);
}

struct Quadrature {
  int m = 0;        // fine points per axis
  int ratio = 0;    // m / n
  double hq = 0.0;
  std::vector<double> weight;  // K_per(y) hq^3 on the fine lattice, zero at y = 0
  double W[3][3] = {};         // sum of K(y) chi0 y_i y_j hq^3 over the centered cell
  double rho = 0.0;
  double tail = 0.0;
};

Quadrature build(const Grid3& g, double F, double C, double quad_radius, int quad_n) {
  if (g.n() > 16) throw std::invalid_argument("quadrature oracle is limited to grids of at most 16^3");
  if (quad_n < g.n() || quad_n % g.n() != 0) throw std::invalid_argument("quad_n must be a multiple of n");
  if (!(quad_radius > 0.0)) throw std::invalid_argument("quad_radius must be positive");
  Quadrature q;
  q.m = quad_n;
  q.ratio = quad_n / g.n();
  const double L = g.box_length();
  q.hq = L / quad_n;
  q.rho = L / 10.0;
  const int images = static_cast<int>(std::floor(quad_radius / L));
  const double cellw = q.hq * q.hq * q.hq;
  const int m = q.m;
  q.weight.assign(static_cast<std::size_t>(m) * m * m, 0.0);
  for (int j3 = 0; j3 < m; ++j3) {
    for (int j2 = 0; j2 < m; ++j2) {
      for (int j1 = 0; j1 < m; ++j1) {
        const int o[3] = {j1 < m / 2 ? j1 : j1 - m, j2 < m / 2 ? j2 : j2 - m, j3 < m / 2 ? j3 : j3 - m};
        const Vec3 y{o[0] * q.hq, o[1] * q.hq, o[2] * q.hq};
        double kp = 0.0;
        for (int a = -images; a <= images; ++a) {
          for (int b = -images; b <= images; ++b) {
            for (int c = -images; c <= images; ++c) {
              if (a == 0 && b == 0 && c == 0) continue;
              kp += kernel_K({y[0] + a * L, y[1] + b * L, y[2] + c * L}, F, C);
            }
          }
        }
        const bool origin = o[0] == 0 && o[1] == 0 && o[2] == 0;
        if (!origin) {
          const double k0 = kernel_K(y, F, C);
          kp += k0;
          const double z = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2] / (F * F));
          const double s = k0 * std::exp(-(z / q.rho) * (z / q.rho)) * cellw;
          for (int i = 0; i < 3; ++i) {
            for (int jj = 0; jj < 3; ++jj) q.W[i][jj] += s * y[i] * y[jj];
          }
        }
        q.weight[static_cast<std::size_t>(j1) + static_cast<std::size_t>(m) * (j2 + static_cast<std::size_t>(m) * j3)] =
            origin ? 0.0 : kp * cellw;
      }
    }
  }
  q.tail = kernel_mass_outside_box((images + 0.5) * L, F, C);
  return q;
}

// Spectral interpolation of a band-limited field onto an m^3 lattice.
std::vector<double> interpolate(const Field& f, int m) {
  const Field s = to_spectral(f);
  const Grid3& g = s.grid();
  Grid3 fine = make_grid(m, g.box_length(), g.f_param());
  Field out(fine, Rep::spectral);
  const int n = g.n();
  for (int i3 = 0; i3 < n; ++i3) {
    for (int i2 = 0; i2 < n; ++i2) {
      for (int i1 = 0; i1 < n; ++i1) {
        if (i1 == n / 2 || i2 == n / 2 || i3 == n / 2) continue;
        const std::size_t kc = g.index(i1, i2, i3);
        const std::size_t kf = fine.index(fine.frequency_index(g.frequency(i1)), fine.frequency_index(g.frequency(i2)),
                                          fine.frequency_index(g.frequency(i3)));
        out[kf] = s[kc];
      }
    }
  }
  const Field p = to_physical(out);
  std::vector<double> v(p.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = p[k].real();
  return v;
}

// Closed-form integral of K(y) Q(y) exp(-|z|^2/rho^2) for a quadratic form
// Q(y) = sum_i d_i y_i^2: F^-2 rho (sqrt(pi)/2) [A11 (d1 + d2) + A33 F^2 d3],
// A11 = -8 pi C / 15, A33 = 56 pi C / 15.
double quadratic_addback(const double d[3], double F, double C, double rho) {
  const double A11 = -8.0 * kPi * C / 15.0, A33 = 56.0 * kPi * C / 15.0;
  return rho * (std::sqrt(kPi) / 2.0) * (A11 * (d[0] + d[1]) + A33 * F * F * d[2]) / (F * F);
}

template <class Integrand>
double lattice_sum(const Quadrature& q, int X1, int X2, int X3, Integrand&& fn) {
  const int m = q.m;
  double acc = 0.0;
  for (int j3 = 0; j3 < m; ++j3) {
    const int a3 = (X3 - j3 + m) % m;
    for (int j2 = 0; j2 < m; ++j2) {
      const int a2 = (X2 - j2 + m) % m;
      const std::size_t wrow = static_cast<std::size_t>(m) * (j2 + static_cast<std::size_t>(m) * j3);
      const std::size_t frow = static_cast<std::size_t>(m) * (a2 + static_cast<std::size_t>(m) * a3);
      for (int j1 = 0; j1 < m; ++j1) {
        const int a1 = X1 - j1 >= 0 ? X1 - j1 : X1 - j1 + m;
        acc += q.weight[wrow + j1] * fn(frow + a1);
      }
    }
  }
  return acc;
}

}  // namespace

Field bilinear_M_oracle(const Field& f, const Field& g, const PhysParams& p, double quad_radius, int quad_n,
                        double C) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("fields live on different grids");
  const Grid3& G = f.grid();
  const Quadrature q = build(G, p.F, C, quad_radius, quad_n);
  const auto ff = interpolate(f, q.m), gf = interpolate(g, q.m);
  const Field fp = to_physical(f), gp = to_physical(g);
  const Field3 df = to_physical(gradient(to_spectral(f))), dg = to_physical(gradient(to_spectral(g)));
  double mf = 0.0, mg = 0.0, mfg = 0.0;
  for (std::size_t k = 0; k < ff.size(); ++k) {
    mf += ff[k];
    mg += gf[k];
    mfg += ff[k] * gf[k];
  }
  const double inv = 1.0 / static_cast<double>(ff.size());
  mf *= inv;
  mg *= inv;
  mfg *= inv;

  Field out(G, Rep::physical);
  for (std::size_t k = 0; k < G.size(); ++k) {
    const auto c = G.coords(k);
    const double f0 = fp[k].real(), g0 = gp[k].real();
    const double s = lattice_sum(q, c[0] * q.ratio, c[1] * q.ratio, c[2] * q.ratio,
                                 [&](std::size_t i) { return (ff[i] - f0) * (gf[i] - g0); });
    const double a[3] = {df[0][k].real(), df[1][k].real(), df[2][k].real()};
    const double b[3] = {dg[0][k].real(), dg[1][k].real(), dg[2][k].real()};
    double sub = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) sub += q.W[i][j] * a[i] * b[j];
    }
    const double d[3] = {a[0] * b[0], a[1] * b[1], a[2] * b[2]};
    const double mean_p = mfg - f0 * mg - g0 * mf + f0 * g0;
    out[k] = s - sub + quadratic_addback(d, p.F, C, q.rho) + mean_p * q.tail;
  }
  return out;
}

Field lambda_oracle(const Field& f, const PhysParams& p, double quad_radius, int quad_n, double C) {
  const Grid3& G = f.grid();
  const Quadrature q = build(G, p.F, C, quad_radius, quad_n);
  const auto ff = interpolate(f, q.m);
  const Field fp = to_physical(f);
  const Field fs = to_spectral(f);
  Field3 hess{Field(G, Rep::physical), Field(G, Rep::physical), Field(G, Rep::physical)};
  for (int i = 0; i < 3; ++i) hess[i] = to_physical(partial(partial(fs, i), i));
  // off-diagonal Hessian entries integrate to zero against the even weight
  double mf = 0.0;
  for (double v : ff) mf += v;
  mf /= static_cast<double>(ff.size());

  Field out(G, Rep::physical);
  for (std::size_t k = 0; k < G.size(); ++k) {
    const auto c = G.coords(k);
    const double f0 = fp[k].real();
    const double s =
        lattice_sum(q, c[0] * q.ratio, c[1] * q.ratio, c[2] * q.ratio, [&](std::size_t i) { return ff[i] - f0; });
    const double d[3] = {0.5 * hess[0][k].real(), 0.5 * hess[1][k].real(), 0.5 * hess[2][k].real()};
    const double sub = q.W[0][0] * d[0] + q.W[1][1] * d[1] + q.W[2][2] * d[2];
    out[k] = s - sub + quadratic_addback(d, p.F, C, q.rho) + (mf - f0) * q.tail;
  }
  return out;
}

double calibrate_kernel_constant(const Grid3& g, const PhysParams& p, double quad_radius, int quad_n) {
  const double L = g.box_length();
  const double sigma = L / 8.0;
  Field bump = sample(g, [&](const Vec3& x) {
    double r2 = 0.0;
    for (int i = 0; i < 3; ++i) r2 += (x[i] - 0.5 * L) * (x[i] - 0.5 * L);
    return std::exp(-r2 / (2.0 * sigma * sigma));
  });
  // band-limit to |k|_inf <= n/4 so the interpolation onto the fine lattice is exact
  Field s = to_spectral(bump);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto fr = g.frequencies(k);
    if (std::abs(fr[0]) > g.n() / 4 || std::abs(fr[1]) > g.n() / 4 || std::abs(fr[2]) > g.n() / 4) s[k] = 0.0;
  }
  const Field spec = to_physical(apply_lambda(s, p));
  const Field unit = lambda_oracle(s, p, quad_radius, quad_n, 1.0);
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    num += spec[k].real() * unit[k].real();
    den += unit[k].real() * unit[k].real();
  }
  return num / den;
}

}  // namespace gqg
