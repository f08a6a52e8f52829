#include "gqg/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "gqg/dynamics.hpp"
#include "gqg/errors.hpp"
#include "gqg/cutoff.hpp"
#include "gqg/littlewood_paley.hpp"
#include "gqg/oracles.hpp"
#include "gqg/pseudo_diff.hpp"
#include "gqg/qg.hpp"
#include "gqg/report.hpp"
#include "gqg/spectral.hpp"
#include "gqg/striated.hpp"
#include "gqg/sweep.hpp"
#include "gqg/wave_matrix.hpp"

namespace gqg {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Check at_most(const std::string& name, double measured, double threshold) {
  return {name, measured, threshold, "<=", std::isfinite(measured) && measured <= threshold};
}

Check within(const std::string& name, double measured, double lo, double hi) {
  std::ostringstream rel;
  rel << "in [" << lo << ", " << hi << "]";
  return {name, measured, hi, rel.str(),
          std::isfinite(measured) && measured >= lo && measured <= hi};
}

Check equals(const std::string& name, double measured, double expected) {
  return {name, measured, expected, "==", measured == expected};
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (const cplx& c : f.values()) m = std::max(m, std::abs(c));
  return m;
}

double l2(const Field& f) { return norm(f, NormSpec::Lp(2.0)); }
double l2(const Field4& f) { return norm(f, NormSpec::Lp(2.0)); }

/// Largest over a set of positive values divided by the smallest.
double spread(const std::vector<double>& v) {
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi / *lo;
}

// 1. Gamma = Gamma_L + (nu - nu') F^2 (1 - F^2) Lambda^2 per mode
SuiteResult suite_symbol(const ExperimentConfig& cfg) {
  SuiteResult r{"symbol", {}};
  const PhysParams triples[] = {{1.0, 0.4, 0.6, 1.0}, {0.7, 0.7, 0.5, 1.0}, {1.3, 0.4, 1.0, 1.0}};
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(-20.0, 20.0);
  double worst = 0.0;
  for (const PhysParams& p : triples) {
    for (int i = 0; i < 1000; ++i) {
      Vec3 xi{u(rng), u(rng), u(rng)};
      const double gam = symbol_value(SymbolKind::Gamma, xi, p);
      const double loc = symbol_value(SymbolKind::GammaLocal, xi, p);
      const double lam = symbol_value(SymbolKind::Lambda, xi, p);
      const double rhs = loc + (p.nu - p.nu_prime) * p.F * p.F * (1.0 - p.F * p.F) * lam * lam;
      worst = std::max(worst, std::abs(gam - rhs) / std::max(std::abs(gam), std::abs(rhs)));
    }
  }
  r.checks.push_back(at_most("max relative symbol defect", worst, 1e-12));
  return r;
}

// 2. Q/P projector algebra
SuiteResult suite_decomposition(const ExperimentConfig& cfg) {
  SuiteResult r{"decomposition", {}};
  const PhysParams p{1.0, 0.4, 0.6, 1.0};
  const Grid3 g = make_grid(32, kTwoPi, p.F);
  const Field4 U = to_spectral(random_field4(g, cfg.seed));
  const Decomposition d = decompose(U, p);
  const Decomposition dq = decompose(d.qg, p);
  const Decomposition dosc = decompose(d.osc, p);
  const double idem = std::max({l2(dq.qg - d.qg) / l2(d.qg), l2(dq.osc) / l2(d.qg), l2(dosc.qg) / l2(d.osc),
                                l2(dosc.osc - d.osc) / l2(d.osc)});
  r.checks.push_back(at_most("projector idempotence", idem, 1e-10));
  double orth = 0.0, skew = 0.0;
  // the skew identity holds for divergence-free fields
  const Field4 Ul = leray_project(U);
  const Field4 Pl = decompose(Ul, p).osc;
  const Field4 AU = skew_A(Ul, p);
  for (double s : {0.0, 0.5, 1.0}) {
    const double nq = std::sqrt(inner(d.qg, d.qg, s)), no = std::sqrt(inner(d.osc, d.osc, s));
    orth = std::max(orth, std::abs(inner(d.qg, d.osc, s)) / (nq * no));
    const double na = std::sqrt(inner(AU, AU, s)), npl = std::sqrt(inner(Pl, Pl, s));
    skew = std::max(skew, std::abs(inner(AU, Pl, s)) / (na * npl));
  }
  r.checks.push_back(at_most("Hdot^s orthogonality of Q U and P U", orth, 1e-10));
  r.checks.push_back(at_most("Hdot^s orthogonality of A U and P U", skew, 1e-10));
  const Field om = potential_vorticity(U, p);
  r.checks.push_back(at_most("Omega(Q U) = Omega(U)", l2(potential_vorticity(d.qg, p) - om) / l2(om), 1e-12));
  r.checks.push_back(at_most("Omega(P U) = 0", l2(potential_vorticity(d.osc, p)) / l2(om), 1e-12));
  // transport and diffusion compatibility on quasi-geostrophic fields
  const Field w = to_spectral(random_field(g, cfg.seed + 17));
  const Field4 Uq = biot_savart(w, p);
  const Field3 v = velocity(Uq);
  const Field lhs = transport(v, w);
  const Field rhs = potential_vorticity(transport(v, Uq), p);
  r.checks.push_back(at_most("v.grad Omega(U) = Omega(v.grad U)", l2(lhs - rhs) / l2(lhs), 1e-8));
  const Field4 gu = apply_gamma(Uq, p);
  const Field4 ql = decompose(diffusion_L(Uq, p), p).qg;
  r.checks.push_back(at_most("Gamma U = Q L U", l2(gu - ql) / l2(gu), 1e-10));
  return r;
}

// 3. eigenvalues of B against their expansions
SuiteResult suite_eigen(const ExperimentConfig& cfg) {
  SuiteResult r{"eigen", {}};
  {
    const PhysParams p{1.0, 0.5, 1.0, 1e-2};
    const ModeEigen m = eigen_B({0.0, 0.0, 1.0}, p);
    const double scale = 1.0 / p.eps;
    const double err = std::max({std::abs(m.mu0 + p.nu), std::abs(m.mu - cplx(-p.nu_prime, 0.0)),
                                 std::abs(m.lambda - cplx(-p.nu, 1.0 / p.eps)),
                                 std::abs(m.lambda_bar - cplx(-p.nu, -1.0 / p.eps))}) /
                      scale;
    r.checks.push_back(at_most("spectrum at xi=(0,0,1), F=1 (relative)", err, 1e-10));
  }
  const double m_exp = 0.1, M_exp = 0.2;
  const std::vector<double> eps{1e-2, 3e-3, 1e-3, 3e-4};
  const PhysParams base{1.0, 0.5, 0.6, 1.0};
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> u(-2.4, 2.4);
  std::vector<Vec3> xis;
  const Truncation widest = Truncation::from_exponents(eps.front(), m_exp, M_exp);
  while (xis.size() < 200) {
    const Vec3 xi{u(rng), u(rng), u(rng)};
    const double a = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    if (a < 0.8 || a > 0.95 * widest.R || std::abs(xi[2]) < 1.1 * widest.r) continue;
    xis.push_back(xi);
  }
  std::vector<double> lam_err, mu_err;
  double cond = 0.0;
  for (double e : eps) {
    PhysParams p = base;
    p.eps = e;
    double le = 0.0, me = 0.0;
    for (const Vec3& xi : xis) {
      const ModeEigen m = eigen_B(xi, p);
      le = std::max(le, std::abs(m.residual_E) * e);
      me = std::max(me, std::abs(m.residual_D) * e * e);
      cond = std::max(cond, m.condition);
    }
    lam_err.push_back(le);
    mu_err.push_back(me);
  }
  const SlopeFit fl = fit_loglog("lambda", eps, lam_err);
  const SlopeFit fm = fit_loglog("mu", eps, mu_err);
  r.checks.push_back(within("slope of max|lambda - lambda_lead|", fl.slope, 0.8, 1.2));
  r.checks.push_back(within("slope of max|mu - mu_lead|", fm.slope, 1.7, 2.3));
  r.checks.push_back(at_most("eigenvector condition number", cond, 1e6));
  return r;
}

// 4. discrete Leray inequality and eps-neutrality of the penalization
SuiteResult suite_energy(const ExperimentConfig& cfg) {
  SuiteResult r{"energy", {}};
  const double F = 0.8;
  const Grid3 g = make_grid(32, kTwoPi, F);
  const Field4 U0 = smooth_solenoidal(g, cfg.seed, 4, 1.0);
  const double E0 = std::pow(l2(U0), 2);
  const double dt = 2e-3;
  const int steps = 200;
  std::vector<double> defects;
  double leray = -1e300, skew = 0.0;
  for (double e : {1.0, 1e-2, 1e-4}) {
    const PhysParams p{0.1, 0.05, F, e};
    PeOptions opt;
    opt.track_energy = true;
    PeStepper st(g, p, dt, opt);
    PEState s{U0, 0.0, p};
    for (int n = 0; n < steps; ++n) s = st.step(s);
    const double EN = std::pow(l2(s.U), 2);
    const EnergyBudget& b = st.budget();
    leray = std::max(leray, (EN + 2.0 * p.nu0() * b.grad_sq_integral - E0) / E0);
    defects.push_back((EN + b.dissipation - E0) / E0);
    skew = std::max(skew, b.max_skew_defect);
  }
  const auto [lo, hi] = std::minmax_element(defects.begin(), defects.end());
  r.checks.push_back(at_most("Leray residual (relative)", leray, 1e-6));
  r.checks.push_back(at_most("energy identity defect spread over eps", *hi - *lo, 1e-8));
  r.checks.push_back(at_most("skew defect per step", skew, 1e-10));
  return r;
}

// 5. exact linear propagation
SuiteResult suite_linear(const ExperimentConfig& cfg) {
  SuiteResult r{"linear", {}};
  {
    const PhysParams p{1.0, 0.5, 0.7, 1e-2};
    const Grid3 g = make_grid(16, kTwoPi, p.F);
    const Field4 U0 = smooth_solenoidal(g, cfg.seed, 5, 1.0);
    const double dt = 1e-3;
    const int steps = 10;
    PeOptions opt;
    opt.nonlinear = false;
    PeStepper st(g, p, dt, opt);
    PEState s{U0, 0.0, p};
    for (int n = 0; n < steps; ++n) s = st.step(s);
    Field4 ref(g, Rep::spectral);
    for (std::size_t k = 1; k < g.size(); ++k) {
      if (!g.retained(k)) continue;
      const Mat4 E = expm_taylor(steps * dt * matrix_B(g.xi(k), p));
      for (int a = 0; a < 4; ++a) {
        cplx acc = 0.0;
        for (int b = 0; b < 4; ++b) acc += E(a, b) * U0[b][k];
        ref[a][k] = acc;
      }
    }
    r.checks.push_back(at_most("step_pe vs per-mode exponential oracle", rel_l2(s.U, ref), 1e-12));
  }
  {
    const PhysParams p{1.0, 0.3, 0.5, 1.0};
    const Grid3 g = make_grid(16, kTwoPi, p.F);
    const Field w0 = real_mode(g, {1, 2, 1}, 0.8, 0.3);
    QGState s{w0, 0.0};
    const double dt = 1e-2;
    for (int n = 0; n < 100; ++n) s = step_qg(s, dt, p);
    r.checks.push_back(at_most("step_qg single mode vs exp(t Gamma)", rel_l2(s.omega, semigroup_gamma(w0, 1.0, p)),
                               1e-10));
  }
  {
    const PhysParams p{0.7, 0.7, 0.5, 1.0};
    const Grid3 g = make_grid(16, kTwoPi, p.F);
    const Field w0 = to_spectral(random_field(g, cfg.seed + 5));
    const QGState s = step_qg({w0, 0.0}, 1e-3, p);
    r.checks.push_back(at_most("step_qg vs heat-transport reference (nu = nu')",
                               rel_l2(s.omega, heat_transport_step(w0, 1e-3, p)), 1e-12));
  }
  return r;
}

// 6. Leibniz remainder of Lambda against direct quadrature
SuiteResult suite_bilinear(const ExperimentConfig&) {
  SuiteResult r{"bilinear", {}};
  const PhysParams p{1.0, 1.0, 0.6, 1.0};
  const Grid3 g = make_grid(16, kTwoPi, p.F);
  const double L = g.box_length();
  const Field f = to_spectral(gaussian_bump(g, {0.5 * L, 0.5 * L, 0.5 * L}, L / 8.0));
  const Field h = to_spectral(gaussian_bump(g, {0.5 * L + 0.5, 0.5 * L - 0.3, 0.5 * L + 0.4}, L / 8.0));
  const Field spec = bilinear_M(f, h, p);
  const Field quad = bilinear_M_oracle(f, h, p, 2.0 * L, 32);
  r.checks.push_back(at_most("spectral M vs quadrature (relative L2)", rel_l2(spec, quad), 0.05));
  Field c(g, Rep::spectral);
  c[Grid3::zero_mode()] = 2.5;
  const double scale = l2(2.5 * apply_lambda(h, p));
  r.checks.push_back(at_most("M(const, g) (relative)", l2(bilinear_M(c, h, p)) / scale, 1e-12));
  const double C = calibrate_kernel_constant(g, p, 2.0 * L, 32);
  r.checks.push_back(at_most("calibrated kernel constant vs 1/(2 pi^2) (relative)", std::abs(C / kKernelC - 1.0),
                             0.05));
  return r;
}

// 7. the semigroup kernel
SuiteResult suite_semigroup(const ExperimentConfig&) {
  SuiteResult r{"semigroup", {}};
  const PhysParams p{1.0, 0.3, 0.5, 1.0};
  const double t = 0.1;
  const Grid3 g = make_grid(32, kTwoPi, p.F);
  const double L = g.box_length();
  const Field u = gaussian_bump(g, {0.5 * L, 0.5 * L, 0.5 * L}, 0.35);
  const Field spec = semigroup_gamma(u, t, p);
  const Field K = semigroup_kernel_grid(g, t, p, 4.0);
  const Field conv = periodic_convolution(K, u);
  r.checks.push_back(at_most("exp(t Gamma) vs K_t convolution (relative L2)", rel_l2(conv, spec), 0.02));
  std::vector<double> norms;
  for (int n : {16, 32, 64}) norms.push_back(semigroup_linf_norm(make_grid(n, kTwoPi, p.F), t, p));
  double dev = 0.0;
  for (double v : norms) dev = std::max(dev, std::abs(v / norms.back() - 1.0));
  r.checks.push_back(at_most("L^inf operator norm deviation across 16^3..64^3", dev, 0.2));
  return r;
}

// 8. Littlewood-Paley machinery
SuiteResult suite_littlewood_paley(const ExperimentConfig& cfg) {
  SuiteResult r{"littlewood_paley", {}};
  const Grid3 g = make_grid(32, kTwoPi, 1.0);
  const Field u = to_spectral(random_field(g, cfg.seed));
  const DyadicRange range = dyadic_range(g, false);
  Field sum(g, Rep::spectral);
  std::vector<Field> blocks;
  for (int q = range.q_min; q <= range.q_max; ++q) {
    blocks.push_back(dyadic_block(u, q, BlockKind::delta, false));
    sum += blocks.back();
  }
  r.checks.push_back(at_most("partition of unity", l2(sum - u) / l2(u), 1e-12));
  double cross = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = i + 2; j < blocks.size(); ++j) {
      cross = std::max(cross, max_abs(dyadic_block(blocks[i], range.q_min + static_cast<int>(j), BlockKind::delta,
                                                   false)));
    }
  }
  r.checks.push_back(equals("quasi-orthogonality |j - l| >= 2", cross, 0.0));
  const Field v = to_spectral(random_field(g, cfg.seed + 3));
  const Bony b = bony_decompose(u, v);
  const Field prod = product(u, v);
  r.checks.push_back(at_most("Bony reconstruction", l2(b.T_f_g + b.T_g_f + b.remainder - prod) / l2(prod), 1e-10));

  std::vector<double> bern;
  for (int n : {16, 32, 64}) {
    const Grid3 gn = make_grid(n, kTwoPi, 1.0);
    const Field un = to_spectral(random_field(gn, cfg.seed + 7));
    for (int q = 0; q + 1 <= dyadic_range(gn, false).q_max - 1; ++q) {
      for (double pexp : {2.0, std::numeric_limits<double>::infinity()}) {
        const double c = bernstein_ratio(un, q, pexp);
        if (std::isfinite(c)) bern.push_back(c);
      }
    }
  }
  double gm = 0.0;
  for (double c : bern) gm += std::log(c);
  gm = std::exp(gm / static_cast<double>(bern.size()));
  double bdev = 0.0;
  for (double c : bern) bdev = std::max({bdev, c / gm, gm / c});
  r.checks.push_back(at_most("Bernstein constant spread about geometric mean", bdev, 2.0));

  double aniso = 0.0;
  for (const auto& [rr, RR] : {std::pair{1.0, 3.0}, std::pair{2.0, 3.5}, std::pair{0.5, 2.5}}) {
    std::vector<double> ratios;
    for (int n : {16, 32, 64}) {
      const Grid3 gn = make_grid(n, kTwoPi, 1.0);
      std::vector<double> t(gn.size());
      for (std::size_t k = 0; k < gn.size(); ++k) {
        const Vec3 xi = gn.xi(k);
        t[k] = chi(std::sqrt(gn.xi_sq(k)) / RR) * chi(std::abs(xi[2]) / rr);
      }
      const Field f = apply_table(to_spectral(random_field(gn, cfg.seed + 11)), t);
      ratios.push_back(norm(f, NormSpec::Linf()) / (std::sqrt(RR * RR * rr) * l2(f)));
    }
    aniso = std::max(aniso, spread(ratios));
  }
  r.checks.push_back(at_most("anisotropic Bernstein ratio spread across resolutions", aniso, 2.0));
  return r;
}

// 9. rate of convergence to the quasi-geostrophic limit
SuiteResult suite_convergence(const ExperimentConfig& cfg) {
  SuiteResult r{"convergence", {}};
  const SweepReport rep = run_sweep(cfg);
  int failed = 0;
  for (const TrajectoryResult& t : rep.runs) failed += t.status == "ok" ? 0 : 1;
  r.checks.push_back(equals("aborted sweep members", failed, 0.0));
  r.checks.push_back(within("slope of sup_t ||U_eps,QG - U_QG||_L2 vs eps", rep.fits[0].slope, 0.7, 1.3));
  // eps decreasing along the sweep: each L^4_T L^inf norm at most 1.05 times the previous
  std::vector<std::pair<double, double>> eo;
  for (const TrajectoryResult& t : rep.runs) eo.emplace_back(t.eps, t.osc_l4linf);
  std::sort(eo.begin(), eo.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  double worst = 0.0;
  for (std::size_t i = 1; i < eo.size(); ++i) worst = std::max(worst, eo[i].second / eo[i - 1].second);
  r.checks.push_back(at_most("max ratio of consecutive ||U_osc||_{L^4_T L^inf}", worst, 1.05));
  return r;
}

// 10. striated machinery
SuiteResult suite_striated(const ExperimentConfig& cfg) {
  SuiteResult r{"striated", {}};
  const Grid3 g = make_grid(16, kTwoPi, 1.0);
  // steady cellular flow v = (-sin x2, sin x1, 0); grad v(0) is the rotation generator
  const Field3 v{to_spectral(sample(g, [](const Vec3& x) { return -std::sin(x[1]); })),
                 to_spectral(sample(g, [](const Vec3& x) { return std::sin(x[0]); })), Field(g, Rep::spectral)};
  auto vel = [](const Vec3& x) { return Vec3{-std::sin(x[1]), std::sin(x[0]), 0.0}; };
  auto grad = [](const Vec3& x) {
    Mat3 G{};
    G[0][1] = -std::cos(x[1]);
    G[1][0] = std::cos(x[0]);
    return G;
  };
  auto constant = [&](const Vec3& e) {
    Field3 f{Field(g, Rep::spectral), Field(g, Rep::spectral), Field(g, Rep::spectral)};
    for (int i = 0; i < 3; ++i) f[static_cast<std::size_t>(i)][Grid3::zero_mode()] = e[i];
    return f;
  };
  VectorFamily X{{constant({1, 0, 0}), constant({0, 1, 0})}, 0.0};
  const double dt = 1e-3, T = 0.1;
  const int steps = static_cast<int>(std::lround(T / dt));
  const std::vector<Field3> traj(static_cast<std::size_t>(steps) + 1, v);
  const VectorFamily XT = advect_family(X, traj, dt);
  const Field3 x0 = to_physical(XT.fields[0]);
  double err = 0.0;
  const int n = g.n();
  for (const std::array<int, 3>& c : {std::array<int, 3>{0, 0, 0}, {3, 5, 1}, {8, 2, 7}, {12, 11, 4}, {5, 14, 9}}) {
    const std::size_t k = g.index(c[0], c[1], c[2]);
    const Vec3 x = g.position(k);
    const Vec3 ref = lagrangian_stretch(vel, grad, x, T, {1, 0, 0}, 2000);
    for (int i = 0; i < 3; ++i) err = std::max(err, std::abs(x0[static_cast<std::size_t>(i)][k].real() - ref[i]));
  }
  (void)n;
  const double exact_origin = std::abs(x0[0][0].real() - std::cos(T)) + std::abs(x0[1][0].real() - std::sin(T));
  r.checks.push_back(at_most("advect_family vs characteristic ODE oracle", std::max(err, exact_origin), 1e-6));

  const Field3 Y = to_spectral(Field3{random_field(g, cfg.seed), random_field(g, cfg.seed + 1),
                                      random_field(g, cfg.seed + 2)});
  const Field w = to_spectral(random_field(g, cfg.seed + 3));
  const Field lhs = striated_derivative(Y, w);
  Field rhs = product(w, divergence(Y));
  for (int j = 0; j < 3; ++j) rhs += product(Y[static_cast<std::size_t>(j)], partial(w, j));
  r.checks.push_back(at_most("X(x,D)w = X.grad w + w div X", l2(lhs - rhs) / l2(lhs), 1e-10));
  const VectorFamily E{{constant({1, 0, 0}), constant({0, 1, 0}), constant({0, 0, 1})}, 0.0};
  r.checks.push_back(equals("admissibility of {e1, e2, e3}", admissibility(E), 1.0));
  return r;
}

std::vector<std::pair<std::string, std::string>> read_dir(const std::filesystem::path& dir) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    std::ifstream is(e.path(), std::ios::binary);
    out.emplace_back(e.path().filename().string(),
                     std::string(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// 11. bitwise reproducibility
SuiteResult suite_determinism(const ExperimentConfig& cfg) {
  SuiteResult r{"determinism", {}};
  ExperimentConfig small = cfg;
  small.n = 16;
  small.T = 0.02;
  small.samples = 2;
  small.eps_sweep = {0.1, 0.05};
  small.dt_policy = DtPolicy::fixed;
  small.dt = 5e-3;
  small.patch.center = {0.5 * small.L, 0.5 * small.L, 0.5 * small.L};
  const std::filesystem::path root =
      std::filesystem::temp_directory_path() / ("gqg_determinism_" + std::to_string(cfg.seed));
  std::filesystem::remove_all(root);
  std::vector<std::vector<std::pair<std::string, std::string>>> runs;
  for (int i = 0; i < 2; ++i) {
    const std::filesystem::path dir = root / std::to_string(i);
    write_sweep(dir.string(), run_sweep(small));
    runs.push_back(read_dir(dir));
  }
  std::filesystem::remove_all(root);
  double differing = runs[0].size() == runs[1].size() ? 0.0 : 1.0;
  for (std::size_t i = 0; i < std::min(runs[0].size(), runs[1].size()); ++i) {
    if (runs[0][i] != runs[1][i]) differing += 1.0;
  }
  r.checks.push_back(equals("files differing between identical runs", differing, 0.0));
  r.checks.push_back(within("files written per run", static_cast<double>(runs[0].size()), 4.0, 1e9));
  return r;
}

}  // namespace

bool SuiteResult::pass() const {
  if (checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string SuiteResult::summary() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const Check& c = checks[i];
    os << (i ? "; " : "") << c.name << " = " << c.measured << " (" << c.relation;
    if (c.relation == "<=" || c.relation == "==") os << ' ' << c.threshold;
    os << (c.pass ? ")" : ", FAIL)");
  }
  return os.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"symbol",    "decomposition",    "eigen",       "energy",
                                                 "linear",    "bilinear",         "semigroup",   "littlewood_paley",
                                                 "convergence", "striated",       "determinism"};
  return names;
}

SuiteResult run_suite(const std::string& name, const ExperimentConfig& cfg) {
  if (name == "symbol") return suite_symbol(cfg);
  if (name == "decomposition") return suite_decomposition(cfg);
  if (name == "eigen") return suite_eigen(cfg);
  if (name == "energy") return suite_energy(cfg);
  if (name == "linear") return suite_linear(cfg);
  if (name == "bilinear") return suite_bilinear(cfg);
  if (name == "semigroup") return suite_semigroup(cfg);
  if (name == "littlewood_paley") return suite_littlewood_paley(cfg);
  if (name == "convergence") return suite_convergence(cfg);
  if (name == "striated") return suite_striated(cfg);
  if (name == "determinism") return suite_determinism(cfg);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<SuiteResult> run_invariants(const ExperimentConfig& cfg, const std::vector<std::string>& suites) {
  if (suites.empty()) throw std::invalid_argument("no suites requested");
  for (const std::string& s : suites) {
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
      throw std::invalid_argument("unknown suite '" + s + "'");
    }
  }
  std::vector<SuiteResult> out;
  for (const std::string& s : suites) out.push_back(run_suite(s, cfg));
  return out;
}

void write_invariants_csv(std::ostream& os, const std::vector<SuiteResult>& results) {
  os << "suite,check,measured,relation,threshold,pass\r\n";
  for (const SuiteResult& r : results) {
    for (const Check& c : r.checks) {
      os << csv_field(r.suite) << ',' << csv_field(c.name) << ',' << format_real(c.measured) << ','
         << csv_field(c.relation) << ',' << format_real(c.threshold) << ',' << (c.pass ? "true" : "false") << "\r\n";
    }
  }
}

}  // namespace gqg
