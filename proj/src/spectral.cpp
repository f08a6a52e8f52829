#include "gqg/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fft.hpp"
#include "gqg/params.hpp"

namespace gqg {

void PhysParams::validate() const {
  if (!(nu > 0.0) || !(nu_prime > 0.0)) throw std::invalid_argument("nu and nu' must be positive");
  if (!(F > 0.0) || F > 1.0) throw std::invalid_argument("F must lie in (0, 1]");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
}

Field apply_multiplier(const Field& f, const Symbol& m, cplx zero_mode) {
  Field out = to_spectral(f);
  const Grid3& g = out.grid();
  out[0] *= zero_mode;
  for (std::size_t k = 1; k < g.size(); ++k) {
    const cplx v = m(g.xi(k));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::domain_error("multiplier is not finite at a nonzero mode");
    }
    out[k] *= v;
  }
  return out;
}

Field apply_table(const Field& f, const std::vector<double>& table) {
  Field out = to_spectral(f);
  if (table.size() != out.size()) throw std::invalid_argument("multiplier table size mismatch");
  for (std::size_t k = 0; k < out.size(); ++k) out[k] *= table[k];
  return out;
}

Field partial(const Field& f, int axis) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("axis must be 0, 1 or 2");
  Field out = to_spectral(f);
  const Grid3& g = out.grid();
  const int n = g.n();
  const auto& w = g.axis_wavenumbers();
  for (int i3 = 0; i3 < n; ++i3) {
    for (int i2 = 0; i2 < n; ++i2) {
      for (int i1 = 0; i1 < n; ++i1) {
        const int i = axis == 0 ? i1 : (axis == 1 ? i2 : i3);
        const std::size_t k = g.index(i1, i2, i3);
        // the Nyquist mode has no real odd derivative
        out[k] = i == n / 2 ? cplx(0.0) : out[k] * cplx(0.0, w[i]);
      }
    }
  }
  return out;
}

Field laplacian(const Field& f) {
  Field out = to_spectral(f);
  const auto& q = out.grid().xi_sq_table();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] *= -q[k];
  return out;
}

Field dealias(const Field& f) {
  Field out = to_spectral(f);
  const auto& mask = out.grid().retained_mask();
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (!mask[k]) out[k] = 0.0;
  }
  return out;
}

Field4 dealias(const Field4& f) { return Field4(dealias(f[0]), dealias(f[1]), dealias(f[2]), dealias(f[3])); }

Field product(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("fields live on different grids");
  Field pa(a.grid(), Rep::physical), pb(a.grid(), Rep::physical);
  detail::inverse_pair(dealias(a), dealias(b), pa, pb);
  for (std::size_t k = 0; k < pa.size(); ++k) pa[k] *= pb[k].real();
  return dealias(transform(pa, Direction::forward));
}

double mean(const Field& f) {
  if (f.rep() == Rep::spectral) return f[0].real();
  double s = 0.0;
  for (const auto& x : f.values()) s += x.real();
  return s / static_cast<double>(f.size());
}

Field3 gradient(const Field& f) { return {partial(f, 0), partial(f, 1), partial(f, 2)}; }

Field divergence(const Field3& X) { return partial(X[0], 0) + partial(X[1], 1) + partial(X[2], 2); }

namespace {

double lp_from_pointwise(const std::vector<double>& mag, double p, double cell) {
  if (std::isinf(p)) return mag.empty() ? 0.0 : *std::max_element(mag.begin(), mag.end());
  double s = 0.0;
  for (double m : mag) s += std::pow(m, p);
  return std::pow(s * cell, 1.0 / p);
}

void check_p(double p) {
  if (!(p == 1.0 || p == 2.0 || p == 4.0 || p == 6.0 || std::isinf(p))) {
    throw std::invalid_argument("L^p norm supports p in {1, 2, 4, 6, inf}");
  }
}

double sobolev_sum(const Field& s, const NormSpec& spec) {
  const Grid3& g = s.grid();
  const auto& q = g.xi_sq_table();
  double total = 0.0;
  if (spec.kind == NormSpec::Kind::H) {
    for (std::size_t k = 0; k < s.size(); ++k) total += std::pow(1.0 + q[k], spec.value) * std::norm(s[k]);
  } else {
    double energy = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) energy += std::norm(s[k]);
    if (spec.value <= 0.0 && std::abs(s[0]) > 1e-12 * std::sqrt(energy) && std::abs(s[0]) > 1e-300) {
      throw std::domain_error("homogeneous norm with s <= 0 requires a mean-zero field");
    }
    for (std::size_t k = 1; k < s.size(); ++k) total += std::pow(q[k], spec.value) * std::norm(s[k]);
  }
  return total * g.volume();
}

}  // namespace

double norm(const Field& f, const NormSpec& spec) {
  if (spec.kind == NormSpec::Kind::Lp) {
    check_p(spec.value);
    const Field p = to_physical(f);
    std::vector<double> mag(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) mag[k] = std::abs(p[k]);
    return lp_from_pointwise(mag, spec.value, p.grid().cell_volume());
  }
  return std::sqrt(sobolev_sum(to_spectral(f), spec));
}

namespace {

template <std::size_t N>
double norm_components(const std::array<const Field*, N>& c, const NormSpec& spec) {
  if (spec.kind == NormSpec::Kind::Lp) {
    check_p(spec.value);
    std::vector<double> mag(c[0]->size(), 0.0);
    for (const Field* f : c) {
      const Field p = to_physical(*f);
      for (std::size_t k = 0; k < p.size(); ++k) mag[k] += std::norm(p[k]);
    }
    for (double& m : mag) m = std::sqrt(m);
    return lp_from_pointwise(mag, spec.value, c[0]->grid().cell_volume());
  }
  double total = 0.0;
  for (const Field* f : c) total += sobolev_sum(to_spectral(*f), spec);
  return std::sqrt(total);
}

}  // namespace

double norm(const Field4& f, const NormSpec& spec) {
  return norm_components<4>({&f[0], &f[1], &f[2], &f[3]}, spec);
}

double norm(const Field3& f, const NormSpec& spec) { return norm_components<3>({&f[0], &f[1], &f[2]}, spec); }

double inner(const Field& a, const Field& b, double s) {
  const Field sa = to_spectral(a), sb = to_spectral(b);
  if (!(sa.grid() == sb.grid())) throw std::invalid_argument("fields live on different grids");
  const auto& q = sa.grid().xi_sq_table();
  double total = 0.0;
  for (std::size_t k = 1; k < sa.size(); ++k) {
    total += std::pow(q[k], s) * (sa[k] * std::conj(sb[k])).real();
  }
  return total * sa.grid().volume();
}

double inner(const Field4& a, const Field4& b, double s) {
  double total = 0.0;
  for (int i = 0; i < 4; ++i) total += inner(a[i], b[i], s);
  return total;
}

double divergence_defect(const Field4& U) {
  const Field4 s = to_spectral(U);
  const Grid3& g = s.grid();
  std::vector<double> num(g.size(), 0.0), den(g.size(), 0.0);
  double floor = 0.0;
  for (std::size_t k = 1; k < g.size(); ++k) {
    // odd derivatives vanish at Nyquist modes, so xi . v_hat is not meaningful there
    if (g.is_nyquist(k)) continue;
    const Vec3 xi = g.xi(k);
    num[k] = std::abs(xi[0] * s[0][k] + xi[1] * s[1][k] + xi[2] * s[2][k]);
    den[k] = std::sqrt(g.xi_sq(k) * (std::norm(s[0][k]) + std::norm(s[1][k]) + std::norm(s[2][k])));
    floor = std::max(floor, den[k]);
  }
  // machine epsilon relative to the largest mode, so round-off residue in
  // (near) empty modes does not dominate
  floor *= std::numeric_limits<double>::epsilon();
  double worst = 0.0;
  for (std::size_t k = 1; k < g.size(); ++k) worst = std::max(worst, num[k] / (den[k] + floor + 1e-300));
  return worst;
}

double imaginary_defect(const Field& f) {
  const Field p = to_physical(f);
  double im = 0.0, mx = 0.0;
  for (const auto& x : p.values()) {
    im = std::max(im, std::abs(x.imag()));
    mx = std::max(mx, std::abs(x));
  }
  return mx > 0.0 ? im / mx : 0.0;
}

}  // namespace gqg
