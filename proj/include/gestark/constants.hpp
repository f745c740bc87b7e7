#pragma once

// CODATA 2018 exact / recommended values, SI units.
namespace gestark::constants {

inline constexpr double bohr_magneton = 9.2740100783e-24;  // J/T
inline constexpr double planck = 6.62607015e-34;           // J s
inline constexpr double free_electron_g = 2.00231930436256;

// 1 V/cm = 1e-4 V/um
inline constexpr double v_per_cm_to_v_per_um = 1.0e-4;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

}  // namespace gestark::constants
