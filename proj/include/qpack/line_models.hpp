#pragma once

#include <complex>

namespace qpack::line {

using Complex = std::complex<double>;

// Per-unit-length line parameters.
struct RLGCLine
{
    double R = 0.0;  // ohm/m
    double L = 0.0;  // H/m
    double G = 0.0;  // S/m
    double C = 0.0;  // F/m
};

/// Z = sqrt((R + iwL) / (G + iwC)) on the principal branch (Re Z >= 0).
Complex char_impedance(const RLGCLine &line, double omega);

/// Gamma = (Z - Z0) / (Z + Z0).
Complex reflection_coefficient(Complex z, double z0);

struct MismatchFigures
{
    double vswr = 1.0;
    double reflected_fraction = 0.0;  // |Gamma|^2
    double mismatch_loss_db = 0.0;    // -10 log10(1 - |Gamma|^2)
};

MismatchFigures vswr_and_mismatch(double gamma_mag);

// Round wire of diameter d at height h above a ground plane.
struct WirebondGeometry
{
    double length = 0.0;    // m
    double diameter = 0.0;  // m
    double height = 0.0;    // m
};

/// L = mu0 * l * arcosh(2h/d) / (2 pi).
double wirebond_inductance(const WirebondGeometry &g);

/// C = 2 pi l eps0 / arcosh(h/d).
double wirebond_capacitance(const WirebondGeometry &g);

// Fixed by five parallel 1 nH / 20 fF bonds reaching 50 ohm.
inline constexpr double kDefaultBondMutualCoupling = 0.0625;

struct ParallelBonds
{
    double inductance = 0.0;   // H
    double capacitance = 0.0;  // F
    double impedance = 0.0;    // ohm
};

/// n identical bonds with pairwise mutual coupling k: L(1 + (n-1)k)/n, nC.
ParallelBonds parallel_wirebonds(double l_single, double c_single, int n, double k_mutual = kDefaultBondMutualCoupling);

// Plated through-hole. Antipad d1 must exceed pad d2.
struct ViaGeometry
{
    double height = 0.0;          // m
    double drill_diameter = 0.0;  // m
    double antipad_diameter = 0.0;
    double pad_diameter = 0.0;
    double eps_r = 1.0;
};

// Empirical constants of the via model, exposed for override.
struct ViaConstants
{
    double c1 = 1.95e-6;  // H/m
    double c2 = 5.6e-11;  // F/m
};

struct ViaParasitics
{
    double inductance = 0.0;   // H
    double capacitance = 0.0;  // F
    double f_res = 0.0;        // Hz
};

ViaParasitics via_parasitics(const ViaGeometry &g, const ViaConstants &k = {});

/// lambda / 20 in the dielectric: c / (20 f sqrt(eps_r)).
double via_fence_max_spacing(double f_max_hz, double eps_r);

} // namespace qpack::line
