#pragma once

#include <optional>
#include <string>
#include <vector>

namespace qpack::modes {

// Package description for the rule checker. Every field is optional; a rule
// whose inputs are missing is reported as not evaluated.
struct PackageDescription
{
    std::optional<double> max_qubit_freq_hz;
    std::optional<double> qubit_surface_distance_m;
    std::optional<double> connector_impedance_ohm;
    std::optional<double> waveguide_impedance_ohm;
    std::optional<double> via_pitch_m;
    std::optional<double> via_eps_r;
    std::optional<double> via_f_max_hz;  // defaults to max_qubit_freq_hz
    std::optional<int> ground_bonds_between_signals;
    std::optional<double> package_fundamental_hz;
    std::optional<double> package_a_m;  // used when the fundamental is not given
    std::optional<double> package_b_m;
    std::optional<double> package_d_m;
    std::optional<double> chip_fundamental_hz;
    std::optional<double> chip_a_m;  // used when the chip fundamental is not given
    std::optional<double> chip_b_m;
    std::optional<double> chip_eps_r;
};

enum class RuleStatus
{
    pass,
    fail,
    not_evaluated,
};

std::string to_string(RuleStatus s);

struct RuleFinding
{
    std::string rule;
    RuleStatus status = RuleStatus::not_evaluated;
    std::optional<double> measured;
    std::optional<double> limit;
    std::string detail;
};

inline constexpr double kMinQubitSurfaceDistance = 2e-3;   // m
inline constexpr double kMaxReflectedFraction = 0.0025;     // 10 % impedance spread
inline constexpr int kMinGroundBonds = 3;
inline constexpr double kModeFrequencyMargin = 2.0;         // x max qubit frequency

std::vector<RuleFinding> design_rule_check(const PackageDescription &desc);

} // namespace qpack::modes
