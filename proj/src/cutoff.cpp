#include "gqg/cutoff.hpp"

#include <cmath>

namespace gqg {
namespace {

double bump_exp(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

}  // namespace

double chi(double r) {
  r = std::abs(r);
  constexpr double lo = 3.0 / 4.0, hi = 4.0 / 3.0;
  if (r <= lo) return 1.0;
  if (r >= hi) return 0.0;
  const double s = (r - lo) / (hi - lo);
  const double a = bump_exp(s), b = bump_exp(1.0 - s);
  return b / (a + b);
}

double phi(double r) { return chi(0.5 * r) - chi(r); }

double psi_band(double r, double a, double b) {
  return chi(4.0 * r / (3.0 * b)) * (1.0 - chi(3.0 * r / (4.0 * a)));
}

}  // namespace gqg
