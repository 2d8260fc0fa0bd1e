#pragma once

#include <numbers>

namespace pemc::constants {

inline constexpr double pi = std::numbers::pi;

// CODATA 2018. c is exact in SI, hbar is derived from the exact h.
inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double speed_of_light = 299792458.0;  // m / s
inline constexpr double hbar_c = hbar * speed_of_light;  // J m

}  // namespace pemc::constants
