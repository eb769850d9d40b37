#pragma once
#include "nls/nonlinearity.hpp"

namespace nls::scenario {

// canonical single-mode study point shared by tests and the default reports:
// saturable medium, one internal oscillation in the radial sector, r_t = 2.
inline constexpr double s_sat = 1.0;
inline constexpr double E_star = 2.2;

// frozen observables at E_star (node-doubling moves them below 1e-5 relative)
inline constexpr double omega1 = 2.0373101;  // internal mode, l = 0
inline constexpr double b_center = 11.9142543;
inline constexpr double mass_star = 943.64212;
inline constexpr int r_t = 2;

inline Nonlinearity medium() { return Nonlinearity::saturated(s_sat); }

// parameter window for the interpolated soliton family; wide enough that
// modulation solves and the implicit-parameter Newton never step outside
inline constexpr double E_window_lo = 1.45;
inline constexpr double E_window_hi = 2.75;

}  // namespace nls::scenario
