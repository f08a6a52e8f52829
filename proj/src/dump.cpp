#include "gqg/dump.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace gqg {
namespace {

template <class T>
void put(std::ostream& os, T value) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  unsigned char b[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(b), sizeof(T))) throw std::runtime_error("truncated field dump");
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  T value;
  std::memcpy(&value, b, sizeof(T));
  return value;
}

}  // namespace

void write_dump(std::ostream& os, const Field& f) {
  os.write("GQG1", 4);
  const Grid3& g = f.grid();
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.n()));
  put<double>(os, g.box_length());
  put<double>(os, g.f_param());
  put<std::uint8_t>(os, static_cast<std::uint8_t>(f.rep()));
  for (const auto& x : f.values()) {
    put<double>(os, x.real());
    put<double>(os, x.imag());
  }
  if (!os) throw std::runtime_error("failed writing field dump");
}

void write_dump(const std::string& path, const Field& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_dump(os, f);
}

Field read_dump(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "GQG1", 4) != 0) throw std::runtime_error("bad field dump magic");
  const auto n = get<std::uint32_t>(is);
  const double L = get<double>(is);
  const double F = get<double>(is);
  const auto rep = get<std::uint8_t>(is);
  if (rep > 1) throw std::runtime_error("bad representation tag in field dump");
  Grid3 g = make_grid(static_cast<int>(n), L, F);
  Field f(g, static_cast<Rep>(rep));
  for (auto& x : f.values()) {
    const double re = get<double>(is);
    const double im = get<double>(is);
    x = cplx(re, im);
  }
  return f;
}

Field read_dump(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_dump(is);
}

}  // namespace gqg
