#pragma once

#include <numbers>

namespace qpack {

// CODATA 2018 values (h, k_B, c exact by SI definition).
struct PhysicalConstants
{
    static constexpr double h = 6.62607015e-34;       // J s
    static constexpr double k_B = 1.380649e-23;       // J/K
    static constexpr double c = 299792458.0;          // m/s
    static constexpr double mu0 = 1.25663706212e-6;   // H/m
    static constexpr double eps0 = 8.8541878128e-12;  // F/m
};

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double to_angular(double hz) { return kTwoPi * hz; }
constexpr double to_hz(double rad_per_s) { return rad_per_s / kTwoPi; }

} // namespace qpack
