#include "gqg/oracles.hpp"

#include <cmath>
#include <algorithm>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gqg/pseudo_diff.hpp"
#include "gqg/qg.hpp"
#include "gqg/spectral.hpp"

namespace gqg {

namespace {

void gauss_legendre_nodes(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(static_cast<std::size_t>(n), 0.0);
  w.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[static_cast<std::size_t>(i)] = z;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

double gamma_dir(double c2, double s2, const PhysParams& p) {
  // c = cos(theta) = w3, s = sin(theta)
  const double F2 = p.F * p.F;
  return (p.nu * s2 + p.nu_prime * F2 * c2) / (s2 + F2 * c2);
}

}  // namespace

Mat4 expm_taylor(const Mat4& A) {
  using LMat = Eigen::Matrix<long double, 4, 4>;
  const double nrm = A.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (nrm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
  const LMat X = A.cast<long double>() / std::ldexp(1.0L, squarings);
  LMat term = LMat::Identity();
  LMat sum = LMat::Identity();
  for (int k = 1; k < 30; ++k) {
    term = term * X / static_cast<long double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum.cast<double>();
}

double semigroup_kernel(const Vec3& x, double t, const PhysParams& p, int n_theta, int n_phi) {
  if (!(t > 0.0)) throw std::invalid_argument("kernel time must be positive");
  std::vector<double> c, w;
  gauss_legendre_nodes(n_theta, c, w);
  const double rho = std::hypot(x[0], x[1]);
  const double z = x[2];
  double acc = 0.0;
  for (int i = 0; i < n_theta; ++i) {
    const double ct = c[static_cast<std::size_t>(i)];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    const double a = t * gamma_dir(ct * ct, st * st, p);
    const double pref = std::sqrt(std::numbers::pi) / (4.0 * a * std::sqrt(a));
    double ring = 0.0;
    for (int j = 0; j < n_phi; ++j) {
      const double ph = 2.0 * std::numbers::pi * j / n_phi;
      const double b = rho * st * std::cos(ph) + z * ct;
      ring += (1.0 - b * b / (2.0 * a)) * std::exp(-b * b / (4.0 * a));
    }
    acc += w[static_cast<std::size_t>(i)] * pref * ring * (2.0 * std::numbers::pi / n_phi);
  }
  return acc / std::pow(2.0 * std::numbers::pi, 3);
}

Field semigroup_kernel_grid(const Grid3& g, double t, const PhysParams& p, double cutoff) {
  const int n = g.n();
  const double h = g.spacing();
  Field K(g, Rep::physical);
  std::map<std::pair<long, long>, double> cache;
  for (int i3 = 0; i3 < n; ++i3) {
    for (int i2 = 0; i2 < n; ++i2) {
      for (int i1 = 0; i1 < n; ++i1) {
        double acc = 0.0;
        for (int m3 = -1; m3 <= 1; ++m3) {
          for (int m2 = -1; m2 <= 1; ++m2) {
            for (int m1 = -1; m1 <= 1; ++m1) {
              const long j1 = i1 + static_cast<long>(m1) * n, j2 = i2 + static_cast<long>(m2) * n,
                         j3 = i3 + static_cast<long>(m3) * n;
              const long r2 = j1 * j1 + j2 * j2;
              const double d2 = (static_cast<double>(r2) + static_cast<double>(j3 * j3)) * h * h;
              if (d2 > cutoff * cutoff) continue;
              const auto key = std::make_pair(r2, std::labs(j3));
              auto it = cache.find(key);
              if (it == cache.end()) {
                const double v = semigroup_kernel({std::sqrt(static_cast<double>(r2)) * h, 0.0,
                                                   static_cast<double>(std::labs(j3)) * h},
                                                  t, p);
                it = cache.emplace(key, v).first;
              }
              acc += it->second;
            }
          }
        }
        K[g.index(i1, i2, i3)] = acc;
      }
    }
  }
  return K;
}

Field periodic_convolution(const Field& kernel, const Field& u) {
  const Field a = to_spectral(kernel);
  const Field b = to_spectral(u);
  Field out(a.grid(), Rep::spectral);
  // forward transforms carry 1/n^3; the convolution sum carries h^3 n^3 = L^3
  const double vol = a.grid().volume();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = vol * a[k] * b[k];
  return to_physical(out);
}

double semigroup_linf_norm(const Grid3& g, double t, const PhysParams& p) {
  Field delta(g, Rep::spectral);
  auto table = symbol_table(SymbolKind::Gamma, g, p);
  for (std::size_t k = 0; k < g.size(); ++k) delta[k] = std::exp(t * table[k]);
  const Field k = to_physical(delta);
  // (exp(t Gamma) u)(x_j) = sum_i k(x_j - x_i) u(x_i) / n^3
  double s = 0.0;
  for (const cplx& c : k.values()) s += std::abs(c.real());
  return s / static_cast<double>(g.size());
}

Field heat_transport_step(const Field& omega, double dt, const PhysParams& p) {
  const Field w = dealias(to_spectral(omega));
  const Grid3& g = w.grid();
  std::vector<double> heat(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) heat[k] = std::exp(-p.nu * dt * g.xi_sq(k));
  auto advect = [&](const Field& f) {
    const Field4 u = biot_savart(f, p);
    Field r = product(u[0], partial(f, 0));
    r += product(u[1], partial(f, 1));
    return -r;
  };
  const Field n0 = advect(w);
  Field pred = w;
  pred.axpy(dt, n0);
  pred = apply_table(pred, heat);
  const Field n1 = advect(pred);
  Field out = apply_table(w, heat);
  out.axpy(0.5 * dt, apply_table(n0, heat));
  out.axpy(0.5 * dt, n1);
  out[Grid3::zero_mode()] = 0.0;
  return out;
}

Field gaussian_bump(const Grid3& g, const Vec3& center, double sigma) {
  const double L = g.box_length();
  return sample(g, [&](const Vec3& x) {
    double r2 = 0.0;
    for (int i = 0; i < 3; ++i) {
      double d = x[i] - center[i];
      d -= L * std::round(d / L);
      r2 += d * d;
    }
    return std::exp(-0.5 * r2 / (sigma * sigma));
  });
}

Field random_field(const Grid3& g, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Field f(g, Rep::physical);
  for (std::size_t k = 0; k < g.size(); ++k) f[k] = normal(rng);
  Field s = dealias(to_spectral(f));
  s[Grid3::zero_mode()] = 0.0;
  return to_physical(s);
}

Field4 random_field4(const Grid3& g, unsigned long long seed) {
  return Field4(random_field(g, seed), random_field(g, seed + 1), random_field(g, seed + 2),
                random_field(g, seed + 3));
}

Field4 smooth_solenoidal(const Grid3& g, unsigned long long seed, int kmax, double amplitude) {
  Field4 U = to_spectral(random_field4(g, seed));
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto f = g.frequencies(k);
    if (k == 0 || std::max({std::abs(f[0]), std::abs(f[1]), std::abs(f[2])}) > kmax || g.is_nyquist(k)) {
      for (int c = 0; c < 4; ++c) U[c][k] = 0.0;
    }
  }
  U = leray_project(U);
  const double m = norm(U, NormSpec::Linf());
  U *= amplitude / m;
  return U;
}

Vec3 lagrangian_stretch(const std::function<Vec3(const Vec3&)>& v, const std::function<Mat3(const Vec3&)>& grad_v,
                        const Vec3& x, double t, const Vec3& X0, int steps) {
  const double h = t / steps;
  auto axpy = [](const Vec3& a, double s, const Vec3& b) { return Vec3{a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]}; };
  // backward characteristic: dy/ds = -v(y)
  Vec3 y = x;
  for (int i = 0; i < steps; ++i) {
    const Vec3 k1 = v(y), k2 = v(axpy(y, -0.5 * h, k1)), k3 = v(axpy(y, -0.5 * h, k2)), k4 = v(axpy(y, -h, k3));
    for (int c = 0; c < 3; ++c) y[c] -= h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
  }
  // forward: position and w = J X0 with dw/dt = grad v(y) w
  struct S {
    Vec3 y, w;
  };
  auto rhs = [&](const S& s) {
    const Mat3 G = grad_v(s.y);
    S d{v(s.y), {}};
    for (int i = 0; i < 3; ++i) d.w[i] = G[i][0] * s.w[0] + G[i][1] * s.w[1] + G[i][2] * s.w[2];
    return d;
  };
  auto add = [&](const S& s, double c, const S& d) { return S{axpy(s.y, c, d.y), axpy(s.w, c, d.w)}; };
  S s{y, X0};
  for (int i = 0; i < steps; ++i) {
    const S k1 = rhs(s), k2 = rhs(add(s, 0.5 * h, k1)), k3 = rhs(add(s, 0.5 * h, k2)), k4 = rhs(add(s, h, k3));
    for (int c = 0; c < 3; ++c) {
      s.y[c] += h / 6.0 * (k1.y[c] + 2.0 * k2.y[c] + 2.0 * k3.y[c] + k4.y[c]);
      s.w[c] += h / 6.0 * (k1.w[c] + 2.0 * k2.w[c] + 2.0 * k3.w[c] + k4.w[c]);
    }
  }
  return s.w;
}

double rel_l2(const Field& a, const Field& b) {
  const double d = norm(to_spectral(a) - to_spectral(b), NormSpec::Lp(2.0));
  const double r = norm(b, NormSpec::Lp(2.0));
  return r > 0.0 ? d / r : d;
}

double rel_l2(const Field4& a, const Field4& b) {
  const double d = norm(to_spectral(a) - to_spectral(b), NormSpec::Lp(2.0));
  const double r = norm(b, NormSpec::Lp(2.0));
  return r > 0.0 ? d / r : d;
}

}  // namespace gqg
