#include "gqg/qg.hpp"

#include <cmath>
#include <stdexcept>

#include "gqg/pseudo_diff.hpp"
#include "gqg/spectral.hpp"

namespace gqg {

Field potential_vorticity(const Field4& U, const PhysParams& p) {
  const Field4 s = to_spectral(U);
  Field out = partial(s[1], 0) - partial(s[0], 1);
  out.axpy(-p.F, partial(s[3], 2));
  out[0] = 0.0;
  return out;
}

Field4 biot_savart(const Field& omega, const PhysParams& p) {
  const Field w = to_spectral(omega);
  double energy = 0.0;
  for (const auto& x : w.values()) energy += std::norm(x);
  if (std::abs(w[0]) > 1e-12 * std::sqrt(energy) && std::abs(w[0]) > 1e-300) {
    throw std::domain_error("Biot-Savart inversion requires mean-zero potential vorticity");
  }
  const Field psi = apply_symbol(w, SymbolKind::DeltaFInv, p);
  Field v1 = -partial(psi, 1);
  Field v2 = partial(psi, 0);
  Field th = partial(psi, 2);
  th *= -p.F;
  return Field4(std::move(v1), std::move(v2), Field(w.grid(), Rep::spectral), std::move(th));
}

Decomposition decompose(const Field4& U, const PhysParams& p) {
  const Field4 s = to_spectral(U);
  Field4 qg = biot_savart(potential_vorticity(s, p), p);
  Field4 osc = s - qg;
  return {std::move(qg), std::move(osc)};
}

Field4 skew_A(const Field4& U, const PhysParams& p) {
  Field a = -U[1];
  Field b = U[0];
  Field c = (1.0 / p.F) * U[3];
  Field d = (-1.0 / p.F) * U[2];
  return Field4(std::move(a), std::move(b), std::move(c), std::move(d));
}

Field4 diffusion_L(const Field4& U, const PhysParams& p) {
  const Field4 s = to_spectral(U);
  return Field4(p.nu * laplacian(s[0]), p.nu * laplacian(s[1]), p.nu * laplacian(s[2]), p.nu_prime * laplacian(s[3]));
}

Field4 apply_gamma(const Field4& U, const PhysParams& p) {
  return Field4(apply_gamma(U[0], p), apply_gamma(U[1], p), apply_gamma(U[2], p), apply_gamma(U[3], p));
}

Field transport(const Field3& v, const Field& w) {
  Field out = partial(product(v[0], w), 0);
  out += partial(product(v[1], w), 1);
  out += partial(product(v[2], w), 2);
  return out;
}

Field4 transport(const Field3& v, const Field4& U) {
  return Field4(transport(v, U[0]), transport(v, U[1]), transport(v, U[2]), transport(v, U[3]));
}

Field3 velocity(const Field4& U) { return {U[0], U[1], U[2]}; }

}  // namespace gqg
