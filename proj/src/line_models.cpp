#include "qpack/line_models.hpp"

#include <cmath>

#include "qpack/constants.hpp"
#include "qpack/errors.hpp"

namespace qpack::line {

using detail::require;

Complex char_impedance(const RLGCLine &line, double omega)
{
    require(omega > 0.0, "omega", "angular frequency must be positive");
    require(line.L > 0.0, "L", "must be positive");
    require(line.C > 0.0, "C", "must be positive");
    require(line.R >= 0.0, "R", "must be non-negative");
    require(line.G >= 0.0, "G", "must be non-negative");
    const Complex num(line.R, omega * line.L);
    const Complex den(line.G, omega * line.C);
    require(den != Complex(0.0, 0.0), "G/C", "shunt admittance is zero");
    // std::sqrt is the principal branch, Re >= 0.
    return std::sqrt(num / den);
}

Complex reflection_coefficient(Complex z, double z0)
{
    require(z0 > 0.0, "z0", "reference impedance must be positive");
    const Complex den = z + z0;
    require(den != Complex(0.0, 0.0), "z", "Z = -Z0 has no reflection coefficient");
    return (z - z0) / den;
}

MismatchFigures vswr_and_mismatch(double gamma_mag)
{
    require(gamma_mag >= 0.0 && gamma_mag < 1.0, "gamma_mag", "must lie in [0, 1)");
    MismatchFigures m;
    m.vswr = (1.0 + gamma_mag) / (1.0 - gamma_mag);
    m.reflected_fraction = gamma_mag * gamma_mag;
    m.mismatch_loss_db = -10.0 * std::log10(1.0 - m.reflected_fraction);
    return m;
}

double wirebond_inductance(const WirebondGeometry &g)
{
    require(g.length > 0.0, "length", "must be positive");
    require(g.diameter > 0.0, "diameter", "must be positive");
    require(2.0 * g.height / g.diameter > 1.0, "height", "2h/d must exceed 1");
    return PhysicalConstants::mu0 * g.length * std::acosh(2.0 * g.height / g.diameter) / kTwoPi;
}

double wirebond_capacitance(const WirebondGeometry &g)
{
    require(g.length > 0.0, "length", "must be positive");
    require(g.diameter > 0.0, "diameter", "must be positive");
    require(g.height / g.diameter > 1.0, "height", "h/d must exceed 1");
    return kTwoPi * g.length * PhysicalConstants::eps0 / std::acosh(g.height / g.diameter);
}

ParallelBonds parallel_wirebonds(double l_single, double c_single, int n, double k_mutual)
{
    require(n >= 1, "n", "at least one bond is required");
    require(l_single > 0.0, "l_single", "must be positive");
    require(c_single > 0.0, "c_single", "must be positive");
    require(k_mutual >= 0.0 && k_mutual < 1.0, "k_mutual", "must lie in [0, 1)");
    ParallelBonds p;
    p.inductance = l_single * (1.0 + (n - 1) * k_mutual) / n;
    p.capacitance = n * c_single;
    p.impedance = std::sqrt(p.inductance / p.capacitance);
    return p;
}

ViaParasitics via_parasitics(const ViaGeometry &g, const ViaConstants &k)
{
    require(g.height > 0.0, "height", "must be positive");
    require(g.drill_diameter > 0.0, "drill_diameter", "must be positive");
    require(g.pad_diameter > 0.0, "pad_diameter", "must be positive");
    require(g.antipad_diameter > g.pad_diameter, "antipad_diameter", "must exceed the pad diameter");
    require(g.eps_r >= 1.0, "eps_r", "must be at least 1");
    require(k.c1 > 0.0 && k.c2 > 0.0, "c1/c2", "model constants must be positive");
    ViaParasitics p;
    p.inductance = k.c1 * g.height * (1.0 + std::log(4.0 * g.height / g.drill_diameter));
    require(p.inductance > 0.0, "height", "4h/d too small for the inductance model");
    p.capacitance = k.c2 * g.eps_r * g.height * g.antipad_diameter / (g.antipad_diameter - g.pad_diameter);
    p.f_res = 1.0 / (kTwoPi * std::sqrt(p.inductance * p.capacitance));
    return p;
}

double via_fence_max_spacing(double f_max_hz, double eps_r)
{
    require(f_max_hz > 0.0, "f_max", "must be positive");
    require(eps_r >= 1.0, "eps_r", "must be at least 1");
    return PhysicalConstants::c / (20.0 * f_max_hz * std::sqrt(eps_r));
}

} // namespace qpack::line
