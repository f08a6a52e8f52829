/// @file errors.hpp
/// @brief Exception types raised by the library.
#pragma once

#include <stdexcept>

namespace gqg {

/// Malformed or inconsistent experiment configuration.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Eigenvalues of a mode matrix too close to be labeled reliably.
struct EigenAmbiguity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Time step exceeds the advective stability bound.
struct CflViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Non-finite values appeared during time integration.
struct NumericalBlowup : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gqg
