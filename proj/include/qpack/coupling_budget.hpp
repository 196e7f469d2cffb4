#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpack/lifetime.hpp"

namespace qpack::coupling {

// All rates in this module are angular (rad/s). Conversion from Hz happens
// once, at the file and command-line boundary.
struct SpuriousMode
{
    std::string label;
    double omega_m = 0.0;  // rad/s
    double kappa = 0.0;    // rad/s, omega_m / Q_m
    double g = 0.0;        // rad/s
};

struct QubitSpec
{
    std::string label;
    double omega_q = 0.0;                // rad/s
    std::optional<double> readout_freq;  // Hz
    std::optional<double> t1;            // s
    std::optional<double> t2_star;       // s
};

struct BudgetEntry
{
    std::string source;
    double rate = 0.0;  // 1/s
};

struct DecoherenceBudget
{
    std::vector<BudgetEntry> entries;
    double total_rate = 0.0;
    Lifetime total_t1_limit = Lifetime::unbounded();
};

void validate(const SpuriousMode &mode);
void validate(const QubitSpec &qubit);

/// Raw Boltzmann factor exp(-h nu / (k_B T)).
double thermal_population(double nu_hz, double temperature_k);

/// h nu / k_B.
double freq_to_temperature(double nu_hz);

/// Dispersive shift of the qubit per mode photon, g^2 / (omega_m - omega_q).
double stark_shift_per_photon(const SpuriousMode &mode, double omega_q);

/// kappa^2 Delta^2 / (4 g^4); large values mean deep in the dispersive regime.
double dispersive_ratio(const SpuriousMode &mode, double omega_q);

/// Photon-noise dephasing kappa n / (1 + kappa^2 Delta^2 / (4 g^4)). Zero
/// coupling off resonance gives zero (infinite suppression).
double mode_dephasing_rate(const SpuriousMode &mode, double omega_q, double n_bar);

/// Purcell decay g^2 kappa / (omega_m - omega_q)^2.
double purcell_rate(const SpuriousMode &mode, double omega_q);

/// Sum of Purcell rates; unbounded when the mode list is empty.
DecoherenceBudget purcell_budget(std::span<const SpuriousMode> modes, double omega_q);

/// Budget built from lifetimes already known per mode.
DecoherenceBudget budget_from_lifetimes(std::span<const BudgetEntry> entries);

/// 1 / (1/T_purcell + 1/T_material).
Lifetime package_t1_limit(const Lifetime &purcell, const Lifetime &material);

/// g = sqrt(beta kappa Delta / (4 |alpha|)). alpha and beta share one photon
/// proxy, so their common scale cancels.
double coupling_from_slopes(double alpha_mag, double beta, double kappa, double delta);

// Mode table row in plain-frequency units as stored on disk.
struct ModeTableRow
{
    std::string label;
    double f_m_hz = 0.0;
    double kappa_hz = 0.0;
    double g_hz = 0.0;
    std::optional<double> t_purcell_s;
};

SpuriousMode to_mode(const ModeTableRow &row);
ModeTableRow to_row(const SpuriousMode &mode, std::optional<double> t_purcell_s = std::nullopt);

// CSV label,f_m_hz,kappa_hz,g_hz,t_purcell_s (last column may be blank).
std::vector<ModeTableRow> read_mode_table(std::istream &in);
std::vector<ModeTableRow> read_mode_table_file(const std::string &path);
void write_mode_table(std::ostream &out, std::span<const ModeTableRow> rows);

// CSV label,qubit_freq_hz,readout_freq_hz[,t1_s,t2_star_s].
std::vector<QubitSpec> read_qubit_table_file(const std::string &path);

} // namespace qpack::coupling
