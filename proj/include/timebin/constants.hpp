#pragma once

namespace timebin::constants {

// CODATA 2018 exact values.
inline constexpr double planck_h = 6.62607015e-34;   // J s
inline constexpr double boltzmann_kb = 1.380649e-23; // J/K

} // namespace timebin::constants
