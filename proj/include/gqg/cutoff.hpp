/// @file cutoff.hpp
/// @brief The smooth radial cut-off chi shared by every frequency localization.
#pragma once

namespace gqg {

/// chi(r) = 1 on [0, 3/4], 0 on [4/3, inf), monotone and C-infinity between:
/// with s = (r - 3/4) / (4/3 - 3/4), chi = 1 - S(s), S(s) = e(s) / (e(s) + e(1-s)),
/// e(s) = exp(-1/s) for s > 0 and 0 otherwise.
double chi(double r);

/// phi(r) = chi(r/2) - chi(r), supported in [3/4, 8/3].
double phi(double r);

/// Band filter supported in [a, b]: chi(4r/(3b)) * (1 - chi(3r/(4a))).
double psi_band(double r, double a, double b);

}  // namespace gqg
