#include "gqg/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gqg {

Grid3::Grid3(int n, double box_length, double f_param)
    : n_(n), L_(box_length), F_(f_param) {
  if (n < 8 || n % 2 != 0 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("grid size must be an even power of two >= 8, got " + std::to_string(n));
  }
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    throw std::invalid_argument("box length must be positive");
  }
  if (!(f_param > 0.0) || !std::isfinite(f_param)) {
    throw std::invalid_argument("F must be positive");
  }
  size_ = static_cast<std::size_t>(n) * n * n;
  dealias_ = n / 3;
  if (3 * dealias_ >= n) --dealias_;

  auto t = std::make_shared<Tables>();
  t->axis.resize(n);
  for (int i = 0; i < n; ++i) t->axis[i] = unit() * frequency(i);
  t->xi_sq.resize(size_);
  t->xi_f_sq.resize(size_);
  t->retained.resize(size_);
  t->conj.resize(size_);
  const double F2 = F_ * F_;
  for (int i3 = 0; i3 < n; ++i3) {
    for (int i2 = 0; i2 < n; ++i2) {
      for (int i1 = 0; i1 < n; ++i1) {
        const std::size_t k = index(i1, i2, i3);
        const double a = t->axis[i1], b = t->axis[i2], c = t->axis[i3];
        t->xi_sq[k] = a * a + b * b + c * c;
        t->xi_f_sq[k] = a * a + b * b + F2 * c * c;
        t->retained[k] = std::abs(frequency(i1)) <= dealias_ && std::abs(frequency(i2)) <= dealias_ &&
                         std::abs(frequency(i3)) <= dealias_;
        t->conj[k] = index((n - i1) % n, (n - i2) % n, (n - i3) % n);
      }
    }
  }
  t_ = std::move(t);
}

double Grid3::cell_volume() const {
  const double h = spacing();
  return h * h * h;
}

std::array<int, 3> Grid3::coords(std::size_t k) const {
  const auto n = static_cast<std::size_t>(n_);
  return {static_cast<int>(k % n), static_cast<int>((k / n) % n), static_cast<int>(k / (n * n))};
}

const std::vector<double>& Grid3::axis_wavenumbers() const { return t_->axis; }

Vec3 Grid3::xi(std::size_t k) const {
  const auto c = coords(k);
  return {t_->axis[c[0]], t_->axis[c[1]], t_->axis[c[2]]};
}

std::array<int, 3> Grid3::frequencies(std::size_t k) const {
  const auto c = coords(k);
  return {frequency(c[0]), frequency(c[1]), frequency(c[2])};
}

bool Grid3::is_nyquist(std::size_t k) const {
  const auto c = coords(k);
  const int h = n_ / 2;
  return c[0] == h || c[1] == h || c[2] == h;
}

Vec3 Grid3::position(std::size_t k) const {
  const auto c = coords(k);
  const double h = spacing();
  return {h * c[0], h * c[1], h * c[2]};
}

Grid3 make_grid(int n, double L, double F) { return Grid3(n, L, F); }

}  // namespace gqg
