#include "gqg/field.hpp"

#include <stdexcept>

#include "fft.hpp"

namespace gqg {
namespace {

void require_compatible(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("fields live on different grids");
  if (a.rep() != b.rep()) throw std::invalid_argument("fields have different representations");
}

}  // namespace

Field::Field(const Grid3& g, Rep r) : grid_(g), rep_(r), v_(g.size()) {}

Field::Field(const Grid3& g, Rep r, std::vector<cplx> values) : grid_(g), rep_(r), v_(std::move(values)) {
  if (v_.size() != g.size()) throw std::invalid_argument("field data size does not match grid");
}

Field& Field::operator+=(const Field& o) {
  require_compatible(*this, o);
  for (std::size_t k = 0; k < v_.size(); ++k) v_[k] += o.v_[k];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  require_compatible(*this, o);
  for (std::size_t k = 0; k < v_.size(); ++k) v_[k] -= o.v_[k];
  return *this;
}

Field& Field::operator*=(double a) {
  for (auto& x : v_) x *= a;
  return *this;
}

Field& Field::operator*=(cplx a) {
  for (auto& x : v_) x *= a;
  return *this;
}

Field& Field::axpy(double a, const Field& o) {
  require_compatible(*this, o);
  for (std::size_t k = 0; k < v_.size(); ++k) v_[k] += a * o.v_[k];
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator-(Field a) { return a *= -1.0; }
Field operator*(double s, Field a) { return a *= s; }

Field transform(const Field& f, Direction dir) {
  const Rep expected = dir == Direction::forward ? Rep::physical : Rep::spectral;
  if (f.rep() != expected) throw std::invalid_argument("transform direction does not match representation");
  Field out(f.grid(), dir == Direction::forward ? Rep::spectral : Rep::physical);
  detail::fft3(f.data(), out.data(), f.grid().n(), dir);
  if (dir == Direction::forward) out *= 1.0 / static_cast<double>(f.size());
  return out;
}

Field to_spectral(const Field& f) { return f.rep() == Rep::spectral ? f : transform(f, Direction::forward); }
Field to_physical(const Field& f) { return f.rep() == Rep::physical ? f : transform(f, Direction::inverse); }

Field sample(const Grid3& g, const std::function<double(const Vec3&)>& fn) {
  Field f(g, Rep::physical);
  for (std::size_t k = 0; k < g.size(); ++k) f[k] = fn(g.position(k));
  return f;
}

Field single_mode(const Grid3& g, const std::array<int, 3>& freq, cplx amplitude) {
  Field f(g, Rep::spectral);
  f[g.index(g.frequency_index(freq[0]), g.frequency_index(freq[1]), g.frequency_index(freq[2]))] = amplitude;
  return f;
}

Field real_mode(const Grid3& g, const std::array<int, 3>& freq, double cos_amp, double sin_amp) {
  // a cos(k.x) + b sin(k.x) = c e^{ikx} + conj(c) e^{-ikx}, c = (a - i b)/2
  const cplx c(0.5 * cos_amp, -0.5 * sin_amp);
  Field f(g, Rep::spectral);
  const std::size_t kp =
      g.index(g.frequency_index(freq[0]), g.frequency_index(freq[1]), g.frequency_index(freq[2]));
  const std::size_t km = g.conjugate_index(kp);
  f[kp] += c;
  f[km] += std::conj(c);
  return f;
}

Field zeros_spectral(const Grid3& g) { return Field(g, Rep::spectral); }

Field4::Field4(const Grid3& g, Rep r) : c_{Field(g, r), Field(g, r), Field(g, r), Field(g, r)} {}

Field4::Field4(Field v1, Field v2, Field v3, Field theta)
    : c_{std::move(v1), std::move(v2), std::move(v3), std::move(theta)} {
  for (int i = 1; i < 4; ++i) require_compatible(c_[0], c_[i]);
}

Field4& Field4::operator+=(const Field4& o) {
  for (int i = 0; i < 4; ++i) c_[i] += o.c_[i];
  return *this;
}

Field4& Field4::operator-=(const Field4& o) {
  for (int i = 0; i < 4; ++i) c_[i] -= o.c_[i];
  return *this;
}

Field4& Field4::operator*=(double a) {
  for (auto& c : c_) c *= a;
  return *this;
}

Field4& Field4::axpy(double a, const Field4& o) {
  for (int i = 0; i < 4; ++i) c_[i].axpy(a, o.c_[i]);
  return *this;
}

Field4 operator+(Field4 a, const Field4& b) { return a += b; }
Field4 operator-(Field4 a, const Field4& b) { return a -= b; }
Field4 operator*(double s, Field4 a) { return a *= s; }

Field4 transform(const Field4& f, Direction dir) {
  return Field4(transform(f[0], dir), transform(f[1], dir), transform(f[2], dir), transform(f[3], dir));
}

Field4 to_spectral(const Field4& f) { return f.rep() == Rep::spectral ? f : transform(f, Direction::forward); }
Field4 to_physical(const Field4& f) { return f.rep() == Rep::physical ? f : transform(f, Direction::inverse); }

Field3 to_spectral(const Field3& f) { return {to_spectral(f[0]), to_spectral(f[1]), to_spectral(f[2])}; }
Field3 to_physical(const Field3& f) { return {to_physical(f[0]), to_physical(f[1]), to_physical(f[2])}; }

}  // namespace gqg
