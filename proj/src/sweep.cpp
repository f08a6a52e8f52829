#include "gqg/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <thread>

#include "fft.hpp"
#include "gqg/dump.hpp"
#include "gqg/dynamics.hpp"
#include "gqg/errors.hpp"
#include "gqg/initial_data.hpp"
#include "gqg/qg.hpp"
#include "gqg/spectral.hpp"
#include "gqg/striated.hpp"

namespace gqg {

namespace {

Grid3 config_grid(const ExperimentConfig& cfg) { return make_grid(cfg.n, cfg.L, cfg.F); }

/// Largest pointwise Euclidean length of the listed spectral fields.
double linf_of(const std::vector<const Field*>& fs) {
  const Grid3& g = fs.front()->grid();
  std::vector<double> acc(g.size(), 0.0);
  for (std::size_t i = 0; i < fs.size(); i += 2) {
    Field a(g, Rep::physical), b(g, Rep::physical);
    const Field zero(g, Rep::spectral);
    detail::inverse_pair(*fs[i], i + 1 < fs.size() ? *fs[i + 1] : zero, a, b);
    for (std::size_t k = 0; k < g.size(); ++k) acc[k] += a[k].real() * a[k].real() + b[k].real() * b[k].real();
  }
  return std::sqrt(*std::max_element(acc.begin(), acc.end()));
}

double grad_linf(const Field4& U) {
  std::vector<Field> d;
  for (int c = 0; c < 4; ++c) {
    for (int j = 0; j < 3; ++j) d.push_back(partial(U[c], j));
  }
  std::vector<const Field*> ptr;
  for (const Field& f : d) ptr.push_back(&f);
  return linf_of(ptr);
}

double osc_linf(const Field4& osc) { return linf_of({&osc[0], &osc[1], &osc[2], &osc[3]}); }

}  // namespace

int step_count(const ExperimentConfig& cfg, double eps) {
  double dt = cfg.dt;
  if (cfg.dt_policy == DtPolicy::proportional) dt = std::min(cfg.dt, cfg.dt_factor * eps);
  const int raw = static_cast<int>(std::ceil(cfg.T / dt - 1e-9));
  return ((raw + cfg.samples - 1) / cfg.samples) * cfg.samples;
}

InitialData build_initial_data(const ExperimentConfig& cfg, double eps) {
  const Grid3 g = config_grid(cfg);
  const PhysParams p = cfg.params(eps);
  const PatchVorticity pv = patch_vorticity(cfg.patch, g);
  const Field omega0 = dealias(pv.omega);
  Field4 U0_qg = biot_savart(omega0, p);
  const InitSpec spec = cfg.init_spec(eps);
  Field4 U0 = regularize(U0_qg, spec, Filter::chi_lowpass);
  if (cfg.osc_enabled) U0 += make_oscillating(cfg.seed, spec, g, p);
  return {dealias(U0), std::move(U0_qg), omega0};
}

std::vector<Field> qg_reference(const ExperimentConfig& cfg, const Field& omega0) {
  int steps = 0;
  for (double e : cfg.eps_sweep) steps = std::max(steps, step_count(cfg, e));
  const double dt = cfg.T / steps;
  const int stride = steps / cfg.samples;
  const PhysParams p = cfg.params(cfg.eps_sweep.front());
  std::vector<Field> out{omega0};
  QGState s{omega0, 0.0};
  for (int n = 1; n <= steps; ++n) {
    s = step_qg(s, dt, p, cfg.cfl);
    if (n % stride == 0) out.push_back(s.omega);
  }
  return out;
}

TrajectoryResult run_trajectory(const ExperimentConfig& cfg, double eps, const std::vector<Field>& reference) {
  TrajectoryResult r;
  r.eps = eps;
  r.steps = step_count(cfg, eps);
  r.dt = cfg.T / r.steps;
  if (cfg.regime_check) {
    const RegimeCheck rc = check_regime(cfg.m, cfg.M);
    r.regime_ok = rc.ok;
    r.regime_message = rc.message;
  }
  const PhysParams p = cfg.params(eps);
  const InitialData init = build_initial_data(cfg, eps);
  const HypothesisNorms hn = hypothesis_norms(init.U0_eps);
  r.hdot1 = hn.hdot1;
  r.h6 = hn.h6;
  const VectorFamily family = tangent_family(cfg.patch, init.U0_eps.grid());

  PeOptions opt;
  opt.penalized = cfg.penalized;
  opt.cfl = cfg.cfl;
  opt.scheme = cfg.scheme;
  const int stride = r.steps / cfg.samples;

  double l4_acc = 0.0, V = 0.0;
  double prev_osc = 0.0, prev_grad = 0.0;
  VectorFamily X = family;
  auto row_at = [&](const Field4& U, double t, int sample, double g_inf, double o_inf) {
    const Decomposition d = decompose(U, p);
    const Field omega = potential_vorticity(U, p);
    MetricsRow m{};
    m.eps = eps;
    m.t = t;
    m.U_L2 = norm(U, NormSpec::Lp(2.0));
    m.gradU_L2 = norm(U, NormSpec::Hdot(1.0));
    m.Uosc_Linf = o_inf;
    m.Uosc_L4Linf_running = std::pow(l4_acc, 0.25);
    m.Omega_L2 = norm(omega, NormSpec::Lp(2.0));
    m.Omega_Linf = norm(omega, NormSpec::Linf());
    m.UQG_err_L2 = norm(d.qg - biot_savart(reference[static_cast<std::size_t>(sample)], p), NormSpec::Lp(2.0));
    m.V_eps = V;
    const double cs = striated_norm(omega, X, cfg.striated_s);
    const double denom = m.Omega_L2 + (m.Omega_Linf > 0.0 ? m.Omega_Linf * std::log(std::numbers::e + cs / m.Omega_Linf)
                                                          : 0.0);
    m.log_ratio = denom > 0.0 ? g_inf / denom : 0.0;
    return m;
  };

  try {
    PeStepper stepper(init.U0_eps.grid(), p, r.dt, opt);
    PEState s{init.U0_eps, 0.0, p};
    prev_grad = grad_linf(s.U);
    prev_osc = osc_linf(decompose(s.U, p).osc);
    r.rows.push_back(row_at(s.U, 0.0, 0, prev_grad, prev_osc));
    for (int n = 1; n <= r.steps; ++n) {
      const Field3 v_prev = velocity(s.U);
      s = stepper.step(s);
      s.t = n * r.dt;
      const double gi = grad_linf(s.U);
      const double oi = osc_linf(decompose(s.U, p).osc);
      V += 0.5 * r.dt * (gi + prev_grad);
      l4_acc += 0.5 * r.dt * (std::pow(oi, 4) + std::pow(prev_osc, 4));
      prev_grad = gi;
      prev_osc = oi;
      if (cfg.striated_tracking) X = advect_family(X, {v_prev, velocity(s.U)}, r.dt, cfg.cfl);
      if (n % stride == 0) r.rows.push_back(row_at(s.U, s.t, n / stride, gi, oi));
    }
    for (int c = 0; c < 4; ++c) r.final_state.push_back(s.U[c]);
  } catch (const CflViolation& e) {
    r.status = std::string("cfl violation: ") + e.what();
  } catch (const NumericalBlowup& e) {
    r.status = std::string("numerical blowup: ") + e.what();
  }
  for (const MetricsRow& m : r.rows) r.sup_qg_err = std::max(r.sup_qg_err, m.UQG_err_L2);
  r.osc_l4linf = std::pow(l4_acc, 0.25);
  return r;
}

SweepReport run_sweep(const ExperimentConfig& cfg) {
  validate(cfg);
  const InitialData base = build_initial_data(cfg, cfg.eps_sweep.front());
  const std::vector<Field> reference = qg_reference(cfg, base.omega0);
  SweepReport rep;
  rep.runs.resize(cfg.eps_sweep.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < cfg.eps_sweep.size(); i = next++) {
      rep.runs[i] = run_trajectory(cfg, cfg.eps_sweep[i], reference);
    }
  };
  const int nt = std::max(1, std::min<int>(cfg.threads, static_cast<int>(cfg.eps_sweep.size())));
  if (nt == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<double> eps, err, osc, h1, h6;
  for (const TrajectoryResult& t : rep.runs) {
    if (t.status != "ok") continue;
    eps.push_back(t.eps);
    err.push_back(t.sup_qg_err);
    osc.push_back(t.osc_l4linf);
    h1.push_back(t.hdot1);
    h6.push_back(t.h6);
  }
  rep.fits.push_back(fit_loglog("sup_t UQG_err_L2", eps, err));
  rep.fits.push_back(fit_loglog("Uosc_L4Linf", eps, osc));
  rep.fits.push_back(fit_loglog("U0_Hdot1", eps, h1));
  rep.fits.push_back(fit_loglog("U0_H6", eps, h6));
  return rep;
}

std::vector<std::string> write_sweep(const std::string& dir, const SweepReport& r) {
  std::vector<std::vector<MetricsRow>> series;
  for (const TrajectoryResult& t : r.runs) series.push_back(t.rows);
  std::vector<std::string> paths = emit_report(dir, series, r.fits);
  const std::string runs = (std::filesystem::path(dir) / "runs.csv").string();
  std::ofstream os(runs, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot write " + runs);
  os << "eps,dt,steps,status,regime_ok,regime_message,sup_UQG_err_L2,Uosc_L4Linf,U0_Hdot1,U0_H6\r\n";
  for (const TrajectoryResult& t : r.runs) {
    os << format_real(t.eps) << ',' << format_real(t.dt) << ',' << t.steps << ',' << csv_field(t.status) << ','
       << (t.regime_ok ? "true" : "false") << ',' << csv_field(t.regime_message) << ',' << format_real(t.sup_qg_err)
       << ',' << format_real(t.osc_l4linf) << ',' << format_real(t.hdot1) << ',' << format_real(t.h6) << "\r\n";
  }
  paths.push_back(runs);
  for (std::size_t i = 0; i < r.runs.size(); ++i) {
    for (std::size_t c = 0; c < r.runs[i].final_state.size(); ++c) {
      const std::string path =
          (std::filesystem::path(dir) / ("final_" + std::to_string(i) + "_" + std::to_string(c) + ".bin")).string();
      write_dump(path, r.runs[i].final_state[c]);
      paths.push_back(path);
    }
  }
  return paths;
}

}  // namespace gqg
