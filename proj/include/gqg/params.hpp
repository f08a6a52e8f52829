/// @file params.hpp
/// @brief Physical parameters of the primitive equations.
#pragma once

#include <algorithm>

namespace gqg {

/// Viscosity nu, thermal diffusivity nu', Froude ratio F and Rossby number eps.
struct PhysParams {
  double nu = 1.0;
  double nu_prime = 1.0;
  double F = 1.0;
  double eps = 1.0;

  double nu0() const { return std::min(nu, nu_prime); }
  double m_visc() const { return std::max(nu, nu_prime) / nu0(); }
  /// Throws std::invalid_argument unless nu, nu' > 0, F in (0, 1] and eps > 0.
  void validate() const;
};

}  // namespace gqg
