#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "qpack/parallel.hpp"

namespace qpack::match {

enum class FilterFamily
{
    butterworth,
    chebyshev,
};

std::string to_string(FilterFamily f);
FilterFamily parse_family(const std::string &name);

// Low-pass prototype behind the C-L-C wirebond match. Chebyshev designs
// must carry an explicit ripple; the cutoff is the -3.01 dB point for
// Butterworth and the ripple-band edge for Chebyshev.
struct FilterSpec
{
    FilterFamily family = FilterFamily::butterworth;
    double ripple_db = 0.0;  // Chebyshev only
    int order = 3;
    double fc = 10e9;        // Hz
    double z0 = 50.0;        // ohm
};

// Ripple that reproduces the ~0.6 nH Chebyshev compensation at 10 GHz.
inline constexpr double kDefaultChebyshevRippleDb = 3.0;

void validate(const FilterSpec &spec);

/// Normalized element values g_1..g_n for a doubly terminated ladder.
std::vector<double> prototype_g_values(FilterFamily family, int order, double ripple_db = 0.0);

/// Largest series inductance a third-order C-L-C match can absorb: g2 Z0 / (2 pi fc).
double max_compensable_inductance(const FilterSpec &spec);

// Shunt C1 (interposer side), series L (wirebond plus any added inductance),
// shunt C3 (chip side). c3 is the capacitor to add on top of the bond's own
// parasitic capacitance, which sits at the chip end.
struct SynthesizedMatch
{
    double c1 = 0.0;           // F
    double l = 0.0;            // H, series inductance the prototype requires
    double c3 = 0.0;           // F
    double c_parasitic = 0.0;  // F
    double margin = 0.0;       // H, l minus the bond inductance
    double ripple_db = 0.0;
    bool feasible = false;
};

SynthesizedMatch synthesize_match(double l_parasitic, double c_parasitic, const FilterSpec &spec);

// Single shunt capacitor bringing sqrt(L / (Cp + Ct)) to Z0.
struct LcMatch
{
    double c_tuning = 0.0;  // F
    double impedance = 0.0; // ohm, closure value
    bool feasible = false;
};

LcMatch synthesize_lc_match(double l_parasitic, double c_parasitic, double z0);

/// S21 of the shunt-C / series-L / shunt-C cascade between Z0 terminations.
std::complex<double> filter_s21(const SynthesizedMatch &m, double z0, double freq_hz);

/// |S21| in dB over a grid.
std::vector<double> filter_response(const SynthesizedMatch &m, double z0, std::span<const double> freqs_hz,
                                    Execution exec = Execution::parallel);

} // namespace qpack::match
