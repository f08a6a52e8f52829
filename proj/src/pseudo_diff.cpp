#include "gqg/pseudo_diff.hpp"

#include <cmath>
#include <stdexcept>

#include "gqg/spectral.hpp"

namespace gqg {
namespace {

void require_grid_f(const Grid3& g, const PhysParams& p) {
  if (g.f_param() != p.F) throw std::invalid_argument("grid F and parameter F differ");
}

}  // namespace

double symbol_value(SymbolKind kind, const Vec3& xi, const PhysParams& p) {
  const double h2 = xi[0] * xi[0] + xi[1] * xi[1];
  const double v2 = xi[2] * xi[2];
  const double F2 = p.F * p.F;
  const double q = h2 + v2;
  const double qF = h2 + F2 * v2;
  const bool zero = q == 0.0;
  switch (kind) {
    case SymbolKind::Gamma:
      if (zero) throw std::domain_error("Gamma symbol is singular at xi = 0");
      return -(q / qF) * (p.nu * h2 + p.nu_prime * F2 * v2);
    case SymbolKind::GammaLocal:
      return -(p.nu * h2 + ((1.0 - F2) * p.nu + F2 * p.nu_prime) * v2);
    case SymbolKind::Lambda:
      if (zero) throw std::domain_error("Lambda symbol is singular at xi = 0");
      return -v2 / std::sqrt(qF);
    case SymbolKind::DeltaF:
      return -qF;
    case SymbolKind::DeltaFInv:
      if (zero) throw std::domain_error("inverse of Delta_F is singular at xi = 0");
      return -1.0 / qF;
    case SymbolKind::LerayProjector:
      throw std::invalid_argument("the Leray projector symbol is matrix valued; use leray_symbol");
  }
  throw std::invalid_argument("unknown symbol kind");
}

std::vector<double> symbol_table(SymbolKind kind, const Grid3& g, const PhysParams& p) {
  require_grid_f(g, p);
  std::vector<double> t(g.size(), 0.0);
  for (std::size_t k = 1; k < g.size(); ++k) t[k] = symbol_value(kind, g.xi(k), p);
  return t;
}

Field apply_symbol(const Field& f, SymbolKind kind, const PhysParams& p) {
  return apply_table(f, symbol_table(kind, f.grid(), p));
}

Field apply_gamma(const Field& f, const PhysParams& p) { return apply_symbol(f, SymbolKind::Gamma, p); }
Field apply_lambda(const Field& f, const PhysParams& p) { return apply_symbol(f, SymbolKind::Lambda, p); }

std::array<std::array<double, 3>, 3> leray_symbol(const Vec3& xi) {
  const double q = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
  std::array<std::array<double, 3>, 3> P{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) P[i][j] = (i == j ? 1.0 : 0.0) - (q > 0.0 ? xi[i] * xi[j] / q : 0.0);
  }
  return P;
}

Field4 leray_project(const Field4& U) {
  Field4 out = to_spectral(U);
  const Grid3& g = out.grid();
  for (std::size_t k = 1; k < g.size(); ++k) {
    const Vec3 xi = g.xi(k);
    const double q = g.xi_sq(k);
    const cplx d = (xi[0] * out[0][k] + xi[1] * out[1][k] + xi[2] * out[2][k]) / q;
    for (int i = 0; i < 3; ++i) out[i][k] -= xi[i] * d;
  }
  return out;
}

double kernel_K(const Vec3& y, double F, double C) {
  const double h2 = y[0] * y[0] + y[1] * y[1];
  const double v2 = y[2] * y[2] / (F * F);
  const double r2 = h2 + v2;
  if (r2 == 0.0) throw std::domain_error("kernel K is singular at y = 0");
  return -(2.0 * C / (F * F * F)) * (h2 - 3.0 * v2) / (r2 * r2 * r2);
}

Field bilinear_M(const Field& f, const Field& g, const PhysParams& p) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("fields live on different grids");
  const Field fs = dealias(f), gs = dealias(g);
  const Field lf = apply_lambda(fs, p), lg = apply_lambda(gs, p);
  Field out = apply_lambda(product(fs, gs), p);
  out -= product(fs, lg);
  out -= product(gs, lf);
  return out;
}

Field semigroup_gamma(const Field& f, double t, const PhysParams& p) {
  if (!(t >= 0.0)) throw std::invalid_argument("semigroup time must be non-negative");
  auto table = symbol_table(SymbolKind::Gamma, f.grid(), p);
  for (double& v : table) v = std::exp(t * v);
  return apply_table(f, table);
}

}  // namespace gqg
