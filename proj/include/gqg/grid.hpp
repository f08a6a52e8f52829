/// @file grid.hpp
/// @brief Periodic lattice on the torus [0, L)^3 with wavenumber tables.
#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <numbers>
#include <vector>

namespace gqg {

using Vec3 = std::array<double, 3>;

/// Periodic n^3 lattice. Flat index k = i1 + n*(i2 + n*i3), x1 fastest.
///
/// Wavenumbers per axis are (2*pi/L) * {0, 1, ..., n/2-1, -n/2, ..., -1}.
/// Copies share the precomputed tables.
class Grid3 {
 public:
  Grid3(int n, double box_length, double f_param);

  int n() const { return n_; }
  double box_length() const { return L_; }
  double f_param() const { return F_; }
  std::size_t size() const { return size_; }
  double spacing() const { return L_ / n_; }
  /// 2*pi/L, the wavenumber of frequency 1.
  double unit() const { return 2.0 * std::numbers::pi / L_; }
  double cell_volume() const;
  double volume() const { return L_ * L_ * L_; }

  std::size_t index(int i1, int i2, int i3) const {
    return static_cast<std::size_t>(i1) +
           static_cast<std::size_t>(n_) * (static_cast<std::size_t>(i2) + static_cast<std::size_t>(n_) * i3);
  }
  std::array<int, 3> coords(std::size_t k) const;
  /// Integer frequency of lattice index i along one axis.
  int frequency(int i) const { return i < n_ / 2 ? i : i - n_; }
  /// Lattice index of an integer frequency (taken modulo n).
  int frequency_index(int f) const { return ((f % n_) + n_) % n_; }
  const std::vector<double>& axis_wavenumbers() const;

  Vec3 xi(std::size_t k) const;
  double xi_sq(std::size_t k) const { return t_->xi_sq[k]; }
  double xi_f_sq(std::size_t k) const { return t_->xi_f_sq[k]; }
  const std::vector<double>& xi_sq_table() const { return t_->xi_sq; }
  const std::vector<double>& xi_f_sq_table() const { return t_->xi_f_sq; }
  std::array<int, 3> frequencies(std::size_t k) const;

  /// True if some axis sits at the Nyquist frequency -n/2.
  bool is_nyquist(std::size_t k) const;
  static constexpr std::size_t zero_mode() { return 0; }
  /// Index of the mode -xi.
  std::size_t conjugate_index(std::size_t k) const { return t_->conj[k]; }

  /// Largest integer frequency kept by the 2/3 rule (3*K < n).
  int dealias_cutoff() const { return dealias_; }
  bool retained(std::size_t k) const { return t_->retained[k] != 0; }
  const std::vector<unsigned char>& retained_mask() const { return t_->retained; }

  Vec3 position(std::size_t k) const;

  bool operator==(const Grid3& o) const { return n_ == o.n_ && L_ == o.L_ && F_ == o.F_; }

 private:
  struct Tables {
    std::vector<double> axis;
    std::vector<double> xi_sq;
    std::vector<double> xi_f_sq;
    std::vector<unsigned char> retained;
    std::vector<std::size_t> conj;
  };
  int n_;
  double L_;
  double F_;
  std::size_t size_;
  int dealias_;
  std::shared_ptr<const Tables> t_;
};

/// Validated constructor. Throws std::invalid_argument for odd, tiny or
/// non power-of-two n and for non-positive L or F.
Grid3 make_grid(int n, double L = 2.0 * std::numbers::pi, double F = 1.0);

}  // namespace gqg
