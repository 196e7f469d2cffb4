#include "qpack/design_rules.hpp"

#include <cmath>

#include "qpack/line_models.hpp"
#include "qpack/mode_spectrum.hpp"

namespace qpack::modes {

std::string to_string(RuleStatus s)
{
    switch (s) {
    case RuleStatus::pass:
        return "pass";
    case RuleStatus::fail:
        return "fail";
    case RuleStatus::not_evaluated:
        return "not_evaluated";
    }
    return "unknown";
}

namespace {

RuleFinding missing(std::string rule, std::string what)
{
    return {std::move(rule), RuleStatus::not_evaluated, std::nullopt, std::nullopt, "missing " + std::move(what)};
}

// measured must stay at or below limit (upper) or strictly above it (lower).
RuleFinding upper_bound(std::string rule, double measured, double limit, std::string detail)
{
    return {std::move(rule), measured <= limit ? RuleStatus::pass : RuleStatus::fail, measured, limit,
            std::move(detail)};
}

RuleFinding lower_bound(std::string rule, double measured, double limit, bool strict, std::string detail)
{
    const bool ok = strict ? measured > limit : measured >= limit;
    return {std::move(rule), ok ? RuleStatus::pass : RuleStatus::fail, measured, limit, std::move(detail)};
}

std::optional<double> package_fundamental(const PackageDescription &d)
{
    if (d.package_fundamental_hz) {
        return d.package_fundamental_hz;
    }
    if (d.package_a_m && d.package_b_m && d.package_d_m) {
        const CavityGeometry g{*d.package_a_m, *d.package_b_m, *d.package_d_m, 1.0, 1.0};
        // Scan to the first mode: a generous bound of the lowest single-axis term.
        const double guess = cavity_mode_freq(g, {1, 1, 0, ModeKind::tm});
        const auto list = list_modes_below(g, guess);
        return list.front().frequency;
    }
    return std::nullopt;
}

std::optional<double> chip_fundamental(const PackageDescription &d)
{
    if (d.chip_fundamental_hz) {
        return d.chip_fundamental_hz;
    }
    if (d.chip_a_m && d.chip_b_m) {
        return chip_mode_freq(*d.chip_a_m, *d.chip_b_m, d.chip_eps_r.value_or(kSiliconEpsR));
    }
    return std::nullopt;
}

} // namespace

std::vector<RuleFinding> design_rule_check(const PackageDescription &d)
{
    std::vector<RuleFinding> out;

    if (d.qubit_surface_distance_m) {
        out.push_back(lower_bound("qubit_surface_distance", *d.qubit_surface_distance_m, kMinQubitSurfaceDistance,
                                  false, "qubit to package surface distance (m)"));
    } else {
        out.push_back(missing("qubit_surface_distance", "package.qubit_surface_distance_m"));
    }

    if (d.connector_impedance_ohm && d.waveguide_impedance_ohm) {
        const auto gamma = line::reflection_coefficient(*d.connector_impedance_ohm, *d.waveguide_impedance_ohm);
        const auto figures = line::vswr_and_mismatch(std::abs(gamma));
        out.push_back(upper_bound("impedance_match", figures.reflected_fraction, kMaxReflectedFraction,
                                  "reflected power fraction between connector and waveguide"));
    } else {
        out.push_back(missing("impedance_match", "connector/waveguide impedance"));
    }

    const auto fence_freq = d.via_f_max_hz ? d.via_f_max_hz : d.max_qubit_freq_hz;
    if (d.via_pitch_m && d.via_eps_r && fence_freq) {
        out.push_back(upper_bound("via_fence_spacing", *d.via_pitch_m,
                                  line::via_fence_max_spacing(*fence_freq, *d.via_eps_r),
                                  "via pitch against lambda/20 (m)"));
    } else {
        out.push_back(missing("via_fence_spacing", "via pitch, eps_r or frequency"));
    }

    if (d.ground_bonds_between_signals) {
        out.push_back(lower_bound("grounding_wirebonds", *d.ground_bonds_between_signals, kMinGroundBonds, false,
                                  "grounding bonds between signal bonds"));
    } else {
        out.push_back(missing("grounding_wirebonds", "package.ground_bonds"));
    }

    const auto pkg = package_fundamental(d);
    if (pkg && d.max_qubit_freq_hz) {
        out.push_back(lower_bound("package_mode_margin", *pkg, kModeFrequencyMargin * *d.max_qubit_freq_hz, true,
                                  "fundamental package mode against twice the max qubit frequency (Hz)"));
    } else {
        out.push_back(missing("package_mode_margin", "package fundamental or max qubit frequency"));
    }

    const auto chip = chip_fundamental(d);
    if (chip && d.max_qubit_freq_hz) {
        out.push_back(lower_bound("chip_mode_margin", *chip, kModeFrequencyMargin * *d.max_qubit_freq_hz, true,
                                  "chip fundamental against twice the max qubit frequency (Hz)"));
    } else {
        out.push_back(missing("chip_mode_margin", "chip fundamental or max qubit frequency"));
    }
    return out;
}

} // namespace qpack::modes
