#pragma once

#include <complex>

#include "gqg/field.hpp"

namespace gqg::detail {

/// Unnormalized 3D DFT of an n^3 array (x1 fastest). in and out may alias.
void fft3(const cplx* in, cplx* out, int n, Direction dir);

/// Two real physical fields from two spectral (conjugate-symmetric) fields
/// using one complex transform: out_a = Re, out_b = Im of ifft(a + i b).
void inverse_pair(const Field& a, const Field& b, Field& out_a, Field& out_b);

/// Forward transforms of two real physical fields using one complex transform.
void forward_pair(const Field& a, const Field& b, Field& out_a, Field& out_b);

}  // namespace gqg::detail
