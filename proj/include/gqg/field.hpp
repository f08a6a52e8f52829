/// @file field.hpp
/// @brief Scalar and four-component fields in physical or spectral form.
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "gqg/grid.hpp"

namespace gqg {

using cplx = std::complex<double>;

enum class Rep : std::uint8_t { physical = 0, spectral = 1 };
enum class Direction { forward, inverse };

/// Complex lattice of n^3 values on a grid.
///
/// Spectral coefficients follow u(x) = sum_xi u_hat(xi) exp(i xi.x), so the
/// forward transform of exp(i xi.x) has unit coefficient and
/// ||u||_{L^2}^2 = L^3 * sum |u_hat|^2.
class Field {
 public:
  Field(const Grid3& g, Rep r);
  Field(const Grid3& g, Rep r, std::vector<cplx> values);

  const Grid3& grid() const { return grid_; }
  Rep rep() const { return rep_; }
  std::size_t size() const { return v_.size(); }

  cplx* data() { return v_.data(); }
  const cplx* data() const { return v_.data(); }
  std::vector<cplx>& values() { return v_; }
  const std::vector<cplx>& values() const { return v_; }
  cplx& operator[](std::size_t k) { return v_[k]; }
  const cplx& operator[](std::size_t k) const { return v_[k]; }

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(double a);
  Field& operator*=(cplx a);
  /// this += a * o
  Field& axpy(double a, const Field& o);

 private:
  Grid3 grid_;
  Rep rep_;
  std::vector<cplx> v_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator-(Field a);
Field operator*(double s, Field a);

/// Forward (physical -> spectral, divided by n^3) or inverse transform.
/// Throws std::invalid_argument if the representation does not match.
Field transform(const Field& f, Direction dir);
Field to_spectral(const Field& f);
Field to_physical(const Field& f);

/// Physical field sampled from a real function of position.
Field sample(const Grid3& g, const std::function<double(const Vec3&)>& fn);
/// Spectral field holding one coefficient at the given integer frequencies.
Field single_mode(const Grid3& g, const std::array<int, 3>& freq, cplx amplitude);
/// Real physical field a*cos(k.x) + b*sin(k.x) in spectral form.
Field real_mode(const Grid3& g, const std::array<int, 3>& freq, double cos_amp, double sin_amp);

/// Four fields (v1, v2, v3, theta) on one grid and one representation.
class Field4 {
 public:
  Field4(const Grid3& g, Rep r);
  Field4(Field v1, Field v2, Field v3, Field theta);

  Field& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  const Field& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  const Grid3& grid() const { return c_[0].grid(); }
  Rep rep() const { return c_[0].rep(); }

  Field4& operator+=(const Field4& o);
  Field4& operator-=(const Field4& o);
  Field4& operator*=(double a);
  Field4& axpy(double a, const Field4& o);

 private:
  std::array<Field, 4> c_;
};

Field4 operator+(Field4 a, const Field4& b);
Field4 operator-(Field4 a, const Field4& b);
Field4 operator*(double s, Field4 a);

Field4 transform(const Field4& f, Direction dir);
Field4 to_spectral(const Field4& f);
Field4 to_physical(const Field4& f);

using Field3 = std::array<Field, 3>;

Field3 to_spectral(const Field3& f);
Field3 to_physical(const Field3& f);

/// Spectral zero field.
Field zeros_spectral(const Grid3& g);

}  // namespace gqg
