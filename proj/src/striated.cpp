#include "gqg/striated.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gqg/errors.hpp"
#include "gqg/littlewood_paley.hpp"
#include "gqg/qg.hpp"
#include "gqg/spectral.hpp"

namespace gqg {

namespace {

/// -v.grad X + X.grad v for one member.
Field3 stretch_rhs(const Field3& X, const Field3& v) {
  Field3 out = to_spectral(X);
  for (int i = 0; i < 3; ++i) {
    Field r = -transport(v, X[static_cast<std::size_t>(i)]);
    for (int j = 0; j < 3; ++j) {
      r += product(X[static_cast<std::size_t>(j)], partial(v[static_cast<std::size_t>(i)], j));
    }
    out[static_cast<std::size_t>(i)] = std::move(r);
  }
  return out;
}

void axpy3(Field3& y, double a, const Field3& x) {
  for (std::size_t i = 0; i < 3; ++i) y[i].axpy(a, x[i]);
}

}  // namespace

VectorFamily advect_family(const VectorFamily& X, const std::vector<Field3>& v_traj, double dt, double cfl) {
  if (v_traj.size() < 2) throw std::invalid_argument("velocity trajectory must hold at least two samples");
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  VectorFamily out{{}, X.t};
  for (const Field3& x : X.fields) {
    out.fields.push_back({dealias(x[0]), dealias(x[1]), dealias(x[2])});
  }
  for (std::size_t n = 0; n + 1 < v_traj.size(); ++n) {
    const Field3 v0 = to_spectral(v_traj[n]);
    const Field3 v1 = to_spectral(v_traj[n + 1]);
    const Field3 p0 = to_physical(v0);
    double vmax = 0.0;
    for (std::size_t k = 0; k < p0[0].size(); ++k) {
      const double a = p0[0][k].real(), b = p0[1][k].real(), c = p0[2][k].real();
      vmax = std::max(vmax, std::sqrt(a * a + b * b + c * c));
    }
    if (!std::isfinite(vmax)) throw NumericalBlowup("non-finite velocity sample");
    if (vmax > 0.0 && dt > cfl * p0[0].grid().spacing() / vmax) {
      throw CflViolation("dt exceeds the CFL bound of the velocity trajectory");
    }
    for (Field3& x : out.fields) {
      const Field3 k0 = stretch_rhs(x, v0);
      Field3 pred = x;
      axpy3(pred, dt, k0);
      const Field3 k1 = stretch_rhs(pred, v1);
      axpy3(x, 0.5 * dt, k0);
      axpy3(x, 0.5 * dt, k1);
    }
    out.t += dt;
  }
  return out;
}

Field striated_derivative(const Field3& X, const Field& w) {
  for (const Field& x : X) {
    if (!(x.grid() == w.grid())) throw std::invalid_argument("fields live on different grids");
  }
  return transport(X, w);
}

std::vector<double> admissibility_field(const VectorFamily& X) {
  const std::size_t N = X.fields.size();
  if (N < 2) throw std::invalid_argument("admissibility needs at least two vector fields");
  std::vector<Field3> phys;
  for (const Field3& x : X.fields) phys.push_back(to_physical(x));
  const std::size_t M = phys[0][0].size();
  std::vector<double> acc(M, 0.0);
  for (std::size_t a = 0; a < N; ++a) {
    for (std::size_t b = a + 1; b < N; ++b) {
      for (std::size_t k = 0; k < M; ++k) {
        const double x1 = phys[a][0][k].real(), x2 = phys[a][1][k].real(), x3 = phys[a][2][k].real();
        const double y1 = phys[b][0][k].real(), y2 = phys[b][1][k].real(), y3 = phys[b][2][k].real();
        const double c1 = x2 * y3 - x3 * y2, c2 = x3 * y1 - x1 * y3, c3 = x1 * y2 - x2 * y1;
        acc[k] += c1 * c1 + c2 * c2 + c3 * c3;
      }
    }
  }
  const double pre = 2.0 / (static_cast<double>(N) * static_cast<double>(N - 1));
  for (double& v : acc) {
    v = v > 0.0 ? std::pow(pre * v, -0.25) : std::numeric_limits<double>::infinity();
  }
  return acc;
}

double admissibility(const VectorFamily& X) {
  const std::vector<double> f = admissibility_field(X);
  return *std::max_element(f.begin(), f.end());
}

double striated_norm(const Field& w, const VectorFamily& X, double s) {
  double out = norm(w, NormSpec::Linf()) + admissibility(X);
  for (const Field3& x : X.fields) {
    double cs = 0.0;
    for (const Field& c : x) cs = std::max(cs, holder_norm(c, s));
    out += cs + holder_norm(striated_derivative(x, w), s - 1.0);
  }
  return out;
}

}  // namespace gqg
