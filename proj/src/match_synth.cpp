#include "qpack/match_synth.hpp"

#include <algorithm>
#include <cmath>

#include "qpack/constants.hpp"
#include "qpack/errors.hpp"

namespace qpack::match {

using detail::require;
using Complex = std::complex<double>;

std::string to_string(FilterFamily f)
{
    return f == FilterFamily::butterworth ? "butterworth" : "chebyshev";
}

FilterFamily parse_family(const std::string &name)
{
    if (name == "butterworth") {
        return FilterFamily::butterworth;
    }
    if (name == "chebyshev") {
        return FilterFamily::chebyshev;
    }
    throw DomainError("family", "unknown filter family '" + name + "'");
}

void validate(const FilterSpec &spec)
{
    require(spec.fc > 0.0, "fc", "cutoff must be positive");
    require(spec.z0 > 0.0, "z0", "must be positive");
    require(spec.order >= 1 && spec.order <= 5, "order", "prototypes exist for orders 1 to 5");
    if (spec.family == FilterFamily::chebyshev) {
        require(spec.ripple_db > 0.0, "ripple_db", "Chebyshev ripple must be positive");
    }
}

std::vector<double> prototype_g_values(FilterFamily family, int order, double ripple_db)
{
    require(order >= 1 && order <= 5, "order", "prototypes exist for orders 1 to 5");
    std::vector<double> g(static_cast<std::size_t>(order));
    const double n = order;
    if (family == FilterFamily::butterworth) {
        for (int k = 1; k <= order; ++k) {
            g[k - 1] = 2.0 * std::sin((2.0 * k - 1.0) * kPi / (2.0 * n));
        }
        return g;
    }
    require(ripple_db > 0.0, "ripple_db", "Chebyshev ripple must be positive");
    const double beta = std::log(1.0 / std::tanh(ripple_db / (40.0 / std::log(10.0))));
    const double gamma = std::sinh(beta / (2.0 * n));
    auto a = [&](int k) { return std::sin((2.0 * k - 1.0) * kPi / (2.0 * n)); };
    auto b = [&](int k) {
        const double s = std::sin(k * kPi / n);
        return gamma * gamma + s * s;
    };
    g[0] = 2.0 * a(1) / gamma;
    for (int k = 2; k <= order; ++k) {
        g[k - 1] = 4.0 * a(k - 1) * a(k) / (b(k - 1) * g[k - 2]);
    }
    return g;
}

double max_compensable_inductance(const FilterSpec &spec)
{
    validate(spec);
    const auto g = prototype_g_values(spec.family, 3, spec.ripple_db);
    return g[1] * spec.z0 / (kTwoPi * spec.fc);
}

SynthesizedMatch synthesize_match(double l_parasitic, double c_parasitic, const FilterSpec &spec)
{
    require(l_parasitic > 0.0, "l_parasitic", "must be positive");
    require(c_parasitic >= 0.0, "c_parasitic", "must be non-negative");
    validate(spec);
    require(spec.order == 3, "order", "only third-order matches are synthesized");
    const auto g = prototype_g_values(spec.family, 3, spec.ripple_db);
    const double wc = kTwoPi * spec.fc;

    SynthesizedMatch m;
    m.ripple_db = spec.family == FilterFamily::chebyshev ? spec.ripple_db : 0.0;
    m.c_parasitic = c_parasitic;
    m.c1 = g[0] / (wc * spec.z0);
    m.l = g[1] * spec.z0 / wc;
    m.c3 = g[2] / (wc * spec.z0) - c_parasitic;
    m.margin = m.l - l_parasitic;
    m.feasible = m.margin >= 0.0 && m.c3 >= 0.0;
    return m;
}

LcMatch synthesize_lc_match(double l_parasitic, double c_parasitic, double z0)
{
    require(l_parasitic > 0.0, "l_parasitic", "must be positive");
    require(c_parasitic >= 0.0, "c_parasitic", "must be non-negative");
    require(z0 > 0.0, "z0", "must be positive");
    LcMatch m;
    m.c_tuning = l_parasitic / (z0 * z0) - c_parasitic;
    m.feasible = m.c_tuning >= 0.0;
    const double c_total = c_parasitic + std::max(m.c_tuning, 0.0);
    m.impedance = c_total > 0.0 ? std::sqrt(l_parasitic / c_total) : 0.0;
    return m;
}

Complex filter_s21(const SynthesizedMatch &m, double z0, double freq_hz)
{
    const Complex jw(0.0, kTwoPi * freq_hz);
    // ABCD of shunt Y1, series Z, shunt Y3.
    const Complex y1 = jw * m.c1;
    const Complex z = jw * m.l;
    const Complex y3 = jw * (m.c3 + m.c_parasitic);
    const Complex a = 1.0 + z * y3;
    const Complex b = z;
    const Complex c = y1 + y3 + y1 * z * y3;
    const Complex d = 1.0 + y1 * z;
    return 2.0 / (a + b / z0 + c * z0 + d);
}

std::vector<double> filter_response(const SynthesizedMatch &m, double z0, std::span<const double> freqs_hz,
                                    Execution exec)
{
    require(z0 > 0.0, "z0", "must be positive");
    std::vector<double> out(freqs_hz.size());
    for_each_index(freqs_hz.size(), exec,
                   [&](std::size_t i) { out[i] = 20.0 * std::log10(std::abs(filter_s21(m, z0, freqs_hz[i]))); });
    return out;
}

} // namespace qpack::match
