#include "gqg/dynamics.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <stdexcept>

#include "fft.hpp"
#include "gqg/dump.hpp"
#include "gqg/errors.hpp"
#include "gqg/pseudo_diff.hpp"
#include "gqg/qg.hpp"
#include "gqg/spectral.hpp"

namespace gqg {

namespace {

const cplx I(0.0, 1.0);

void check_finite(const Field& f, const char* what) {
  for (const cplx& c : f.values()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw NumericalBlowup(std::string("non-finite value in ") + what);
    }
  }
}

void check_finite(const Field4& U) {
  for (int c = 0; c < 4; ++c) check_finite(U[c], "primitive-equation state");
}

void cfl_guard(double dt, double h, double vmax, double c) {
  if (!std::isfinite(vmax)) throw NumericalBlowup("non-finite velocity");
  if (vmax > 0.0 && dt > c * h / vmax) {
    throw CflViolation("dt = " + std::to_string(dt) + " exceeds CFL bound " + std::to_string(c * h / vmax));
  }
}

/// Van Loan: int_0^h exp(s B^T) Q exp(s B) ds.
Mat4 gramian(const Mat4& B, const Mat4& Q, double h) {
  Eigen::Matrix<double, 8, 8> M = Eigen::Matrix<double, 8, 8>::Zero();
  M.topLeftCorner<4, 4>() = -B.transpose();
  M.topRightCorner<4, 4>() = Q;
  M.bottomRightCorner<4, 4>() = B;
  const Eigen::Matrix<double, 8, 8> E = (h * M).exp();
  const Mat4 G = E.bottomRightCorner<4, 4>().transpose() * E.topRightCorner<4, 4>();
  return 0.5 * (G + G.transpose());
}

double quad_form(const Mat4& G, const Field4& U, std::size_t k) {
  double s = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) s += G(a, b) * std::real(std::conj(U[a][k]) * U[b][k]);
  }
  return s;
}

}  // namespace

Field4 pe_nonlinear(const Field4& Uin) {
  const Field4 U = dealias(to_spectral(Uin));
  const Grid3& g = U.grid();
  Field v1(g, Rep::physical), v2(g, Rep::physical), v3(g, Rep::physical), th(g, Rep::physical);
  detail::inverse_pair(U[0], U[1], v1, v2);
  detail::inverse_pair(U[2], U[3], v3, th);
  const std::size_t N = g.size();
  // the nine distinct products v_i v_j (i <= j) and v_j theta, plus a zero pad
  std::array<Field, 10> prod{Field(g, Rep::physical), Field(g, Rep::physical), Field(g, Rep::physical),
                             Field(g, Rep::physical), Field(g, Rep::physical), Field(g, Rep::physical),
                             Field(g, Rep::physical), Field(g, Rep::physical), Field(g, Rep::physical),
                             Field(g, Rep::physical)};
  for (std::size_t k = 0; k < N; ++k) {
    const double a = v1[k].real(), b = v2[k].real(), c = v3[k].real(), t = th[k].real();
    prod[0][k] = a * a;
    prod[1][k] = a * b;
    prod[2][k] = a * c;
    prod[3][k] = b * b;
    prod[4][k] = b * c;
    prod[5][k] = c * c;
    prod[6][k] = a * t;
    prod[7][k] = b * t;
    prod[8][k] = c * t;
  }
  std::array<Field, 10> hat{Field(g, Rep::spectral), Field(g, Rep::spectral), Field(g, Rep::spectral),
                            Field(g, Rep::spectral), Field(g, Rep::spectral), Field(g, Rep::spectral),
                            Field(g, Rep::spectral), Field(g, Rep::spectral), Field(g, Rep::spectral),
                            Field(g, Rep::spectral)};
  for (int i = 0; i < 10; i += 2) detail::forward_pair(prod[i], prod[i + 1], hat[i], hat[i + 1]);
  // symmetric index of v_i v_j
  static constexpr int vv[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
  Field4 out(g, Rep::spectral);
  const auto& mask = g.retained_mask();
  for (std::size_t k = 1; k < N; ++k) {
    if (!mask[k]) continue;
    const Vec3 xi = g.xi(k);
    cplx d[4];
    for (int i = 0; i < 3; ++i) {
      d[i] = I * (xi[0] * hat[vv[0][i]][k] + xi[1] * hat[vv[1][i]][k] + xi[2] * hat[vv[2][i]][k]);
    }
    d[3] = I * (xi[0] * hat[6][k] + xi[1] * hat[7][k] + xi[2] * hat[8][k]);
    const cplx proj = (xi[0] * d[0] + xi[1] * d[1] + xi[2] * d[2]) / g.xi_sq(k);
    for (int i = 0; i < 3; ++i) out[i][k] = -(d[i] - xi[i] * proj);
    out[3][k] = -d[3];
  }
  return out;
}

Field qg_nonlinear(const Field& omega, const PhysParams& p) {
  const Field w = dealias(to_spectral(omega));
  const Field4 u = biot_savart(w, p);
  const Grid3& g = w.grid();
  Field v1(g, Rep::physical), v2(g, Rep::physical);
  detail::inverse_pair(u[0], u[1], v1, v2);
  const Field wp = transform(w, Direction::inverse);
  Field a(g, Rep::physical), b(g, Rep::physical);
  for (std::size_t k = 0; k < g.size(); ++k) {
    a[k] = v1[k].real() * wp[k].real();
    b[k] = v2[k].real() * wp[k].real();
  }
  Field ah(g, Rep::spectral), bh(g, Rep::spectral);
  detail::forward_pair(a, b, ah, bh);
  Field out(g, Rep::spectral);
  const auto& mask = g.retained_mask();
  for (std::size_t k = 1; k < g.size(); ++k) {
    if (!mask[k]) continue;
    const Vec3 xi = g.xi(k);
    out[k] = -I * (xi[0] * ah[k] + xi[1] * bh[k]);
  }
  return out;
}

PeStepper::PeStepper(const Grid3& g, const PhysParams& p, double dt, const PeOptions& opt)
    : grid_(g), p_(p), dt_(dt), opt_(opt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("time step must be positive");
  p.validate();
  if (opt.track_energy && opt.scheme != PeScheme::strang_midpoint) {
    throw std::invalid_argument("energy tracking requires the strang_midpoint scheme");
  }
  const double h = opt.scheme == PeScheme::strang_midpoint ? 0.5 * dt : dt;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (g.retained(k)) modes_.push_back(k);
  }
  expo_.resize(modes_.size());
  if (opt.track_energy) {
    gram_diss_.resize(modes_.size());
    gram_grad_.resize(modes_.size());
  }
  for (std::size_t m = 0; m < modes_.size(); ++m) {
    const Vec3 xi = g.xi(modes_[m]);
    expo_[m] = expm_B(xi, p, h, opt.penalized);
    if (!opt.track_energy) continue;
    const double q = g.xi_sq(modes_[m]);
    if (q == 0.0) {
      gram_diss_[m].setZero();
      gram_grad_[m].setZero();
      continue;
    }
    const Mat4 B = opt.penalized ? matrix_B(xi, p) : matrix_L(xi, p);
    Mat4 Qd = Mat4::Zero();
    Qd(0, 0) = Qd(1, 1) = Qd(2, 2) = 2.0 * p.nu * q;
    Qd(3, 3) = 2.0 * p.nu_prime * q;
    gram_diss_[m] = gramian(B, Qd, h);
    gram_grad_[m] = gramian(B, q * Mat4::Identity(), h);
  }
}

bool PeStepper::matches(const Grid3& g, const PhysParams& p, double dt, const PeOptions& opt) const {
  return grid_ == g && p_.nu == p.nu && p_.nu_prime == p.nu_prime && p_.F == p.F && p_.eps == p.eps && dt_ == dt &&
         opt_.nonlinear == opt.nonlinear && opt_.penalized == opt.penalized && opt_.cfl == opt.cfl &&
         opt_.scheme == opt.scheme && opt_.fixed_point_tol == opt.fixed_point_tol &&
         opt_.fixed_point_max_iter == opt.fixed_point_max_iter && opt_.track_energy == opt.track_energy;
}

Field4 PeStepper::linear(const Field4& U, bool account) {
  Field4 out(grid_, Rep::spectral);
  const double vol = grid_.volume();
  for (std::size_t m = 0; m < modes_.size(); ++m) {
    const std::size_t k = modes_[m];
    if (account && opt_.track_energy) {
      budget_.dissipation += vol * quad_form(gram_diss_[m], U, k);
      budget_.grad_sq_integral += vol * quad_form(gram_grad_[m], U, k);
    }
    const Mat4& E = expo_[m];
    for (int a = 0; a < 4; ++a) {
      cplx s = 0.0;
      for (int b = 0; b < 4; ++b) s += E(a, b) * U[b][k];
      out[a][k] = s;
    }
  }
  return out;
}

void PeStepper::check_cfl(const Field4& U) const {
  Field v1(grid_, Rep::physical), v2(grid_, Rep::physical), v3(grid_, Rep::physical), th(grid_, Rep::physical);
  detail::inverse_pair(U[0], U[1], v1, v2);
  detail::inverse_pair(U[2], U[3], v3, th);
  double vmax = 0.0;
  for (std::size_t k = 0; k < grid_.size(); ++k) {
    const double a = v1[k].real(), b = v2[k].real(), c = v3[k].real();
    vmax = std::max(vmax, std::sqrt(a * a + b * b + c * c));
  }
  cfl_guard(dt_, grid_.spacing(), vmax, opt_.cfl);
}

Field4 PeStepper::nonlinear_midpoint(const Field4& U) {
  // W = U + (dt/2) N(W), returned as 2W - U
  const double h = 0.5 * dt_;
  Field4 W = U;
  W.axpy(h, pe_nonlinear(U));
  double scale = 0.0;
  for (int c = 0; c < 4; ++c) {
    for (const cplx& x : U[c].values()) scale = std::max(scale, std::abs(x));
  }
  for (int it = 0; it < opt_.fixed_point_max_iter; ++it) {
    Field4 next = U;
    next.axpy(h, pe_nonlinear(W));
    double diff = 0.0;
    for (int c = 0; c < 4; ++c) {
      for (std::size_t k = 0; k < next[c].size(); ++k) diff = std::max(diff, std::abs(next[c][k] - W[c][k]));
    }
    W = std::move(next);
    if (!std::isfinite(diff)) break;
    if (diff <= opt_.fixed_point_tol * std::max(scale, 1e-300)) {
      Field4 out = 2.0 * W;
      out -= U;
      return out;
    }
  }
  throw NumericalBlowup("implicit midpoint iteration did not converge; reduce dt");
}

PEState PeStepper::step(const PEState& s) {
  if (!(s.U.grid() == grid_)) throw std::invalid_argument("state grid differs from stepper grid");
  const Field4 U0 = dealias(to_spectral(s.U));
  check_finite(U0);
  if (opt_.track_energy) {
    budget_.max_skew_defect = std::max(budget_.max_skew_defect, skew_defect(U0, p_));
  }
  Field4 U = U0;
  if (opt_.scheme == PeScheme::strang_midpoint) {
    U = linear(U, true);
    if (opt_.nonlinear) {
      check_cfl(U);
      U = nonlinear_midpoint(U);
    }
    U = linear(U, true);
  } else if (!opt_.nonlinear) {
    U = linear(U, false);
  } else {
    check_cfl(U);
    const Field4 n0 = pe_nonlinear(U);
    Field4 pred = U;
    pred.axpy(dt_, n0);
    pred = linear(pred, false);
    const Field4 n1 = pe_nonlinear(pred);
    Field4 out = linear(U, false);
    out.axpy(0.5 * dt_, linear(n0, false));
    out.axpy(0.5 * dt_, n1);
    U = std::move(out);
  }
  check_finite(U);
  ++budget_.steps;
  return {std::move(U), s.t + dt_, s.params};
}

PEState step_pe(const PEState& s, double dt, const PeOptions& opt) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  thread_local std::unique_ptr<PeStepper> cache;
  if (!cache || !cache->matches(s.U.grid(), s.params, dt, opt)) {
    cache = std::make_unique<PeStepper>(s.U.grid(), s.params, dt, opt);
  }
  return cache->step(s);
}

QGState step_qg(const QGState& s, double dt, const PhysParams& p, double cfl) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  const Field w = dealias(to_spectral(s.omega));
  check_finite(w, "potential vorticity");
  const Grid3& g = w.grid();
  {
    const Field4 u = biot_savart(w, p);
    Field v1(g, Rep::physical), v2(g, Rep::physical);
    detail::inverse_pair(u[0], u[1], v1, v2);
    double vmax = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) vmax = std::max(vmax, std::hypot(v1[k].real(), v2[k].real()));
    cfl_guard(dt, g.spacing(), vmax, cfl);
  }
  const Field n0 = qg_nonlinear(w, p);
  Field pred = w;
  pred.axpy(dt, n0);
  pred = semigroup_gamma(pred, dt, p);
  const Field n1 = qg_nonlinear(pred, p);
  Field out = semigroup_gamma(w, dt, p);
  out.axpy(0.5 * dt, semigroup_gamma(n0, dt, p));
  out.axpy(0.5 * dt, n1);
  out[Grid3::zero_mode()] = 0.0;
  check_finite(out, "potential vorticity");
  return {std::move(out), s.t + dt};
}

Field compute_q_eps(const Field4& U_osc, const Field4& U, const PhysParams& p) {
  if (!(U_osc.grid() == U.grid())) throw std::invalid_argument("fields live on different grids");
  const Field4 o = to_spectral(U_osc);
  const Field4 u = to_spectral(U);
  const Field4 qg = u - o;
  // d3 v3_osc (d1 v2 - d2 v1) - d1 v3_osc d3 v2 + d2 v3_osc d3 v1
  Field q = product(partial(o[2], 2), partial(u[1], 0) - partial(u[0], 1));
  q -= product(partial(o[2], 0), partial(u[1], 2));
  q += product(partial(o[2], 1), partial(u[0], 2));
  // + F d3 v_QG . grad theta_osc + F d3 v_osc . grad theta
  Field t(u.grid(), Rep::spectral);
  for (int j = 0; j < 3; ++j) {
    t += product(partial(qg[j], 2), partial(o[3], j));
    t += product(partial(o[j], 2), partial(u[3], j));
  }
  q.axpy(p.F, t);
  return q;
}

Field rhs_omega(const Field4& Uin, const PhysParams& p) {
  const Field4 U = to_spectral(Uin);
  const Decomposition d = decompose(U, p);
  const Field omega = potential_vorticity(U, p);
  Field out = -transport(velocity(U), omega);
  out += apply_gamma(omega, p);
  out.axpy((p.nu - p.nu_prime) * p.F, laplacian(partial(d.osc[3], 2)));
  out += compute_q_eps(d.osc, U, p);
  return out;
}

double skew_defect(const Field4& Uin, const PhysParams& p) {
  const Field4 U = to_spectral(Uin);
  const Field4 A = leray_project(skew_A(U, p));
  const Grid3& g = U.grid();
  double num = 0.0, den = 0.0;
  for (int c = 0; c < 4; ++c) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      num += std::real(std::conj(A[c][k]) * U[c][k]);
      den += std::norm(U[c][k]);
    }
  }
  return den > 0.0 ? std::abs(num) / den : 0.0;
}

void write_checkpoint(const std::string& dir, int step, const PEState& s) {
  std::filesystem::create_directories(dir);
  for (int c = 0; c < 4; ++c) {
    write_dump(dir + "/u" + std::to_string(step) + "_" + std::to_string(c) + ".bin", s.U[c]);
  }
  const std::string index = dir + "/index.csv";
  const bool fresh = !std::filesystem::exists(index);
  std::ofstream os(index, std::ios::app | std::ios::binary);
  if (!os) throw std::runtime_error("cannot write checkpoint index " + index);
  if (fresh) os << "step,t,nu,nu_prime,F,eps\r\n";
  os << std::setprecision(17) << step << ',' << s.t << ',' << s.params.nu << ',' << s.params.nu_prime << ','
     << s.params.F << ',' << s.params.eps << "\r\n";
}

}  // namespace gqg
