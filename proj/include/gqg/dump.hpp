/// @file dump.hpp
/// @brief Binary field dumps.
///
/// Layout (little-endian): magic "GQG1", u32 n, f64 L, f64 F,
/// u8 representation (0 physical, 1 spectral), then n^3 (re, im) f64 pairs
/// with x1 fastest.
#pragma once

#include <iosfwd>
#include <string>

#include "gqg/field.hpp"

namespace gqg {

void write_dump(std::ostream& os, const Field& f);
void write_dump(const std::string& path, const Field& f);
Field read_dump(std::istream& is);
Field read_dump(const std::string& path);

}  // namespace gqg
