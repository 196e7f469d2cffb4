#include "qpack/mode_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "qpack/constants.hpp"
#include "qpack/errors.hpp"

namespace qpack::modes {

using detail::require;

std::string to_string(ModeKind k)
{
    return k == ModeKind::te ? "TE" : "TM";
}

std::string to_string(ModeSource s)
{
    switch (s) {
    case ModeSource::cavity:
        return "cavity";
    case ModeSource::chip:
        return "chip";
    case ModeSource::stub:
        return "stub";
    }
    return "unknown";
}

std::string mode_name(const ModeIndex &idx)
{
    auto digit = [](int v) { return v < 10 ? std::to_string(v) : "(" + std::to_string(v) + ")"; };
    return to_string(idx.kind) + digit(idx.n) + digit(idx.m) + digit(idx.l);
}

bool is_valid(const ModeIndex &idx)
{
    if (idx.n < 0 || idx.m < 0 || idx.l < 0) {
        return false;
    }
    if (idx.kind == ModeKind::te) {
        return idx.l >= 1 && (idx.n > 0 || idx.m > 0);
    }
    return idx.n >= 1 && idx.m >= 1;
}

void validate(const CavityGeometry &g)
{
    require(g.a > 0.0, "a", "must be positive");
    require(g.b > 0.0, "b", "must be positive");
    require(g.d > 0.0, "d", "must be positive");
    require(g.eps_r >= 1.0, "eps_r", "must be at least 1");
    require(g.mu_r > 0.0, "mu_r", "must be positive");
}

namespace {

double mode_freq_unchecked(double a, double b, double d, double eps_r, double mu_r, int n, int m, int l)
{
    const double kn = n / b;
    const double km = m / a;
    const double kl = d > 0.0 ? l / d : 0.0;
    // c / (2 pi sqrt(mu eps)) * pi * sqrt(...) = c / (2 sqrt(mu eps)) * sqrt(...)
    return PhysicalConstants::c / (2.0 * std::sqrt(mu_r * eps_r)) * std::sqrt(kn * kn + km * km + kl * kl);
}

void sort_predictions(std::vector<ModePrediction> &out)
{
    std::sort(out.begin(), out.end(), [](const ModePrediction &x, const ModePrediction &y) {
        return std::tie(x.frequency, x.index.kind, x.index.n, x.index.m, x.index.l) <
               std::tie(y.frequency, y.index.kind, y.index.n, y.index.m, y.index.l);
    });
}

int axis_limit(double f_max, double unit_freq, const char *field)
{
    // Smallest index whose single-axis term alone exceeds f_max.
    const double limit = std::floor(f_max / unit_freq);
    if (limit > kMaxModeIndex) {
        throw DomainError(field, "mode enumeration exceeds the index cap of " + std::to_string(kMaxModeIndex));
    }
    return static_cast<int>(limit);
}

} // namespace

double cavity_mode_freq(const CavityGeometry &g, const ModeIndex &idx)
{
    validate(g);
    require(idx.n != 0 || idx.m != 0 || idx.l != 0, "index", "all-zero index has no mode");
    require(is_valid(idx), "index", "invalid index for " + to_string(idx.kind) + " mode");
    return mode_freq_unchecked(g.a, g.b, g.d, g.eps_r, g.mu_r, idx.n, idx.m, idx.l);
}

std::vector<ModePrediction> list_modes_below(const CavityGeometry &g, double f_max_hz,
                                             const std::vector<ModeKind> &kinds)
{
    validate(g);
    require(f_max_hz > 0.0, "f_max", "must be positive");
    const double scale = PhysicalConstants::c / (2.0 * std::sqrt(g.mu_r * g.eps_r));
    const int n_max = axis_limit(f_max_hz, scale / g.b, "b");
    const int m_max = axis_limit(f_max_hz, scale / g.a, "a");
    const int l_max = axis_limit(f_max_hz, scale / g.d, "d");

    std::vector<ModePrediction> out;
    for (auto kind : kinds) {
        for (int n = 0; n <= n_max; ++n) {
            for (int m = 0; m <= m_max; ++m) {
                for (int l = 0; l <= l_max; ++l) {
                    const ModeIndex idx{n, m, l, kind};
                    if (!is_valid(idx)) {
                        continue;
                    }
                    const double f = mode_freq_unchecked(g.a, g.b, g.d, g.eps_r, g.mu_r, n, m, l);
                    if (f > f_max_hz) {
                        break;  // frequency grows with l
                    }
                    out.push_back({idx, f, ModeSource::cavity});
                }
            }
        }
    }
    sort_predictions(out);
    return out;
}

double chip_mode_freq(double a, double b, double eps_r)
{
    require(a > 0.0, "a", "must be positive");
    require(b > 0.0, "b", "must be positive");
    require(eps_r >= 1.0, "eps_r", "must be at least 1");
    return mode_freq_unchecked(a, b, 0.0, eps_r, 1.0, 1, 1, 0);
}

std::vector<ModePrediction> list_chip_modes_below(double a, double b, double eps_r, double f_max_hz)
{
    require(a > 0.0, "a", "must be positive");
    require(b > 0.0, "b", "must be positive");
    require(eps_r >= 1.0, "eps_r", "must be at least 1");
    require(f_max_hz > 0.0, "f_max", "must be positive");
    const double scale = PhysicalConstants::c / (2.0 * std::sqrt(eps_r));
    const int n_max = axis_limit(f_max_hz, scale / b, "b");
    const int m_max = axis_limit(f_max_hz, scale / a, "a");
    std::vector<ModePrediction> out;
    for (int n = 1; n <= n_max; ++n) {
        for (int m = 1; m <= m_max; ++m) {
            const double f = mode_freq_unchecked(a, b, 0.0, eps_r, 1.0, n, m, 0);
            if (f > f_max_hz) {
                break;
            }
            out.push_back({{n, m, 0, ModeKind::tm}, f, ModeSource::chip});
        }
    }
    sort_predictions(out);
    return out;
}

double stub_mode_freq(double length, double eps_r)
{
    require(length > 0.0, "length", "must be positive");
    require(eps_r >= 1.0, "eps_r", "must be at least 1");
    return PhysicalConstants::c / (length * std::sqrt(eps_r));
}

double stub_length_for_freq(double f_hz, double eps_r)
{
    require(f_hz > 0.0, "frequency", "must be positive");
    require(eps_r >= 1.0, "eps_r", "must be at least 1");
    return PhysicalConstants::c / (f_hz * std::sqrt(eps_r));
}

} // namespace qpack::modes
