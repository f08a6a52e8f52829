#include "gqg/littlewood_paley.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gqg/cutoff.hpp"
#include "gqg/spectral.hpp"

namespace gqg {

namespace {

double max_wavenumber(const Grid3& g) { return g.unit() * std::sqrt(3.0) * (g.n() / 2); }

void check_exponent(double v, const char* what) {
  if (!(v == 1.0 || v == 2.0 || std::isinf(v))) {
    throw std::invalid_argument(std::string(what) + " must be 1, 2 or infinity");
  }
}

double lr_aggregate(const std::vector<double>& terms, double r) {
  if (std::isinf(r)) {
    double m = 0.0;
    for (double t : terms) m = std::max(m, t);
    return m;
  }
  double s = 0.0;
  for (double t : terms) s += std::pow(t, r);
  return std::pow(s, 1.0 / r);
}

}  // namespace

DyadicRange dyadic_range(const Grid3& g, bool homogeneous) {
  const int log2n = static_cast<int>(std::lround(std::log2(g.n())));
  // chi(2^{-(q_max+1)} |xi|) = 1 on every grid mode
  const int top = std::max(log2n, static_cast<int>(std::ceil(std::log2(4.0 / 3.0 * max_wavenumber(g)))) - 1);
  if (!homogeneous) return {-1, top};
  // chi(2^{-q_min} xi) = 0 at the lowest nonzero wavenumber
  const int bottom = std::min(-log2n, static_cast<int>(std::floor(std::log2(0.75 * g.unit()))));
  return {bottom, top};
}

Field dyadic_block(const Field& u, int q, BlockKind kind, bool homogeneous) {
  const Grid3& g = u.grid();
  const DyadicRange range = dyadic_range(g, homogeneous);
  if (kind == BlockKind::s_low && !homogeneous && q <= -1) return zeros_spectral(g);
  if (q < range.q_min || q > range.q_max + 1) throw std::out_of_range("dyadic index outside representable range");
  if (kind == BlockKind::delta && q > range.q_max) throw std::out_of_range("dyadic index outside representable range");
  const double scale = std::ldexp(1.0, -q);
  std::vector<double> t(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double a = std::sqrt(g.xi_sq(k)) * scale;
    if (kind == BlockKind::s_low) {
      t[k] = (!homogeneous && q <= -1) ? 0.0 : chi(a);
    } else {
      // Delta_{-1} = chi(D) = S_0
      t[k] = (!homogeneous && q == -1) ? chi(std::sqrt(g.xi_sq(k))) : phi(a);
    }
  }
  if (homogeneous) t[Grid3::zero_mode()] = 0.0;
  return apply_table(to_spectral(u), t);
}

BesovNorm besov_norm(const Field& u, const BesovSpec& spec) {
  check_exponent(spec.p, "Besov integrability p");
  check_exponent(spec.r, "Besov summation r");
  const Field us = to_spectral(u);
  const double m = std::abs(us[Grid3::zero_mode()]);
  if (spec.homogeneous && spec.s <= 0.0) {
    double scale = 0.0;
    for (const cplx& c : us.values()) scale = std::max(scale, std::abs(c));
    if (m > 1e-12 * std::max(scale, 1e-300)) {
      throw std::domain_error("homogeneous Besov norm with s <= 0 requires a mean-zero field");
    }
  }
  const DyadicRange range = dyadic_range(u.grid(), spec.homogeneous);
  const NormSpec lp = NormSpec::Lp(spec.p);
  std::vector<double> terms;
  std::vector<double> s_terms;
  for (int q = range.q_min; q <= range.q_max; ++q) {
    const double w = std::pow(2.0, q * spec.s);
    terms.push_back(w * norm(dyadic_block(us, q, BlockKind::delta, spec.homogeneous), lp));
    if (spec.s < 0.0) s_terms.push_back(w * norm(dyadic_block(us, q, BlockKind::s_low, spec.homogeneous), lp));
  }
  BesovNorm out{lr_aggregate(terms, spec.r), std::numeric_limits<double>::quiet_NaN()};
  if (spec.s < 0.0) out.s_form = lr_aggregate(s_terms, spec.r);
  return out;
}

double holder_norm(const Field& u, double s) {
  const double inf = std::numeric_limits<double>::infinity();
  return besov_norm(u, {s, inf, inf, false}).value;
}

double tilde_norm(const std::vector<Field>& traj, const std::vector<double>& times, double sigma, double p,
                  double r, bool homogeneous) {
  if (traj.size() != times.size() || traj.empty()) {
    throw std::invalid_argument("trajectory and sample times must be nonempty and of equal length");
  }
  check_exponent(p, "integrability p");
  check_exponent(r, "time exponent r");
  const DyadicRange range = dyadic_range(traj.front().grid(), homogeneous);
  const NormSpec lp = NormSpec::Lp(p);
  double best = 0.0;
  for (int q = range.q_min; q <= range.q_max; ++q) {
    std::vector<double> vals;
    vals.reserve(traj.size());
    for (const Field& u : traj) vals.push_back(norm(dyadic_block(u, q, BlockKind::delta, homogeneous), lp));
    double tn;
    if (std::isinf(r)) {
      tn = *std::max_element(vals.begin(), vals.end());
    } else {
      double acc = 0.0;
      for (std::size_t i = 1; i < vals.size(); ++i) {
        acc += 0.5 * (times[i] - times[i - 1]) * (std::pow(vals[i], r) + std::pow(vals[i - 1], r));
      }
      tn = std::pow(acc, 1.0 / r);
    }
    best = std::max(best, std::pow(2.0, q * sigma) * tn);
  }
  return best;
}

double bernstein_ratio(const Field& u, int q, double p) {
  const Field b = dyadic_block(u, q, BlockKind::delta, false);
  const NormSpec lp = NormSpec::Lp(p);
  const double nb = norm(b, lp);
  if (nb == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return norm(gradient(b), lp) / (std::ldexp(1.0, q) * nb);
}

Field paraproduct_term(const Field& f, const Field& g, int q) {
  const Field low = dyadic_block(f, q - 1, BlockKind::s_low, false);
  return product(low, dyadic_block(g, q, BlockKind::delta, false));
}

Bony bony_decompose(const Field& f, const Field& g) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("Bony decomposition requires a shared grid");
  const Grid3& grid = f.grid();
  const DyadicRange range = dyadic_range(grid, false);
  const Field fs = to_spectral(f);
  const Field gs = to_spectral(g);
  std::vector<Field> df, dg, sf, sg;
  for (int q = range.q_min; q <= range.q_max; ++q) {
    df.push_back(dyadic_block(fs, q, BlockKind::delta, false));
    dg.push_back(dyadic_block(gs, q, BlockKind::delta, false));
    sf.push_back(dyadic_block(fs, q - 1, BlockKind::s_low, false));
    sg.push_back(dyadic_block(gs, q - 1, BlockKind::s_low, false));
  }
  Bony out{zeros_spectral(grid), zeros_spectral(grid), zeros_spectral(grid)};
  const int nb = static_cast<int>(df.size());
  for (int i = 0; i < nb; ++i) {
    const int q = range.q_min + i;
    if (q >= 1) {
      out.T_f_g += product(sf[static_cast<std::size_t>(i)], dg[static_cast<std::size_t>(i)]);
      out.T_g_f += product(sg[static_cast<std::size_t>(i)], df[static_cast<std::size_t>(i)]);
    }
    for (int j = std::max(0, i - 1); j <= std::min(nb - 1, i + 1); ++j) {
      out.remainder += product(df[static_cast<std::size_t>(i)], dg[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

}  // namespace gqg
