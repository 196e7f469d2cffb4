#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qpack/coupling_budget.hpp"
#include "qpack/lifetime.hpp"
#include "qpack/parallel.hpp"
#include "qpack/ramsey.hpp"

namespace qpack::hidden {

// A package mode as seen by every qubit: coupling g (rad/s) keyed by qubit
// label. Qubits missing from the map do not couple.
struct ScenarioMode
{
    std::string label;
    double omega_m = 0.0;  // rad/s
    double kappa = 0.0;    // rad/s
    std::map<std::string, double> g;

    coupling::SpuriousMode as_seen_by(const std::string &qubit) const;
};

struct GroundTruthScenario
{
    std::vector<coupling::QubitSpec> qubits;
    std::vector<ScenarioMode> modes;
    double photon_gain_eta = 1.0;                 // photons per mW at the generator
    std::map<std::string, double> intrinsic_t2;   // s, per qubit label
    std::optional<int> shots;                     // noiseless when empty
    std::uint64_t seed = 0;
    double amplitude = 0.5;
    double offset = 0.5;
    double nominal_detuning_hz = 2e6;
    double guard_linewidths = 10.0;
};

void validate(const GroundTruthScenario &scenario);

const coupling::QubitSpec &find_qubit(const GroundTruthScenario &scenario, const std::string &label);

// Closed-form qubit response to a continuous probe tone.
struct ProbeResponse
{
    double shift_hz = 0.0;
    double added_dephasing = 0.0;  // 1/s
    double gamma2_star = 0.0;      // 1/s
    double ramsey_freq_hz = 0.0;   // nominal detuning plus shift
};

/// Unit-peak Lorentzian of full width kappa (rad/s) centred on omega_m.
double lorentzian_filling(double probe_hz, double omega_m, double kappa);

/// Refuses probes within guard_linewidths intrinsic linewidths of the qubit.
ProbeResponse probe_response(const GroundTruthScenario &scenario, const std::string &qubit, double probe_hz,
                             double power_dbm);

/// Synthetic Ramsey trace. Shot noise, when enabled, draws from a generator
/// seeded by (scenario.seed, stream) so each point is reproducible on its own.
RamseyTrace simulate_ramsey(const GroundTruthScenario &scenario, const std::string &qubit, double probe_hz,
                            double power_dbm, std::span<const double> delays, std::uint64_t stream = 0);

/// Evenly spaced delays from start to stop inclusive.
std::vector<double> make_delays(double start_s, double stop_s, std::size_t count);

/// Evenly spaced frequency grid from start to stop inclusive.
std::vector<double> make_grid(double start_hz, double stop_hz, std::size_t count);

// Probe power proportional to qubit-probe detuning: P = P0 * Delta / Delta0.
struct PowerSchedule
{
    double p0_dbm = -50.0;
    double reference_detuning_hz = 1e9;

    double power_dbm(double probe_hz, double qubit_hz) const;
};

struct ProbeSweepResult
{
    std::vector<double> probe_freqs;               // Hz
    std::vector<double> probe_powers;              // dBm, NaN when unknown
    std::vector<std::optional<RamseyFit>> fits;
    std::vector<std::string> failures;             // empty when the point fitted
};

/// One simulated and fitted Ramsey trace per grid point.
ProbeSweepResult sweep_probe(const GroundTruthScenario &scenario, const std::string &qubit,
                             std::span<const double> freq_grid, const PowerSchedule &schedule,
                             std::span<const double> delays, Execution exec = Execution::parallel,
                             std::uint64_t stream_base = 0);

/// Fits measured traces, one per probe frequency.
ProbeSweepResult sweep_traces(std::span<const double> probe_freqs, std::span<const RamseyTrace> traces,
                              Execution exec = Execution::parallel);

struct DetectionStats
{
    double baseline = 0.0;   // median Gamma2*
    double mad = 0.0;        // median absolute deviation
    double threshold = 0.0;  // baseline + 5 max(mad, 1e-3 baseline)
};

DetectionStats detection_stats(const ProbeSweepResult &sweep);

struct Feature
{
    double center_hz = 0.0;
    double peak_gamma2 = 0.0;
    double prominence = 0.0;
    std::size_t index = 0;
};

/// Local maxima of Gamma2* above the detection threshold whose prominence
/// also exceeds the threshold margin.
std::vector<Feature> detect_features(const ProbeSweepResult &sweep);

struct Linewidth
{
    double kappa = 0.0;      // rad/s
    double fwhm_hz = 0.0;
    double center_hz = 0.0;  // midpoint of the half-maximum crossings
    double baseline = 0.0;
    double peak = 0.0;
    std::size_t points_above_half = 0;
};

/// FWHM of the baseline-subtracted Gamma2* profile around center_guess. The
/// baseline defaults to the median of the 20% of points farthest from the guess.
Linewidth mode_linewidth(const ProbeSweepResult &sweep, double center_guess_hz,
                         std::optional<double> baseline = std::nullopt);

struct PowerSweepResult
{
    std::vector<double> powers_dbm;
    std::vector<double> freq_shifts;    // Hz
    std::vector<double> gamma2_values;  // 1/s
};

void validate(const PowerSweepResult &data);

PowerSweepResult power_sweep(const GroundTruthScenario &scenario, const std::string &qubit, double probe_hz,
                             std::span<const double> powers_dbm, std::span<const double> delays,
                             Execution exec = Execution::parallel, std::uint64_t stream_base = 0);

struct LineFit
{
    double slope = 0.0;
    double intercept = 0.0;
};

/// Ordinary least squares; needs at least two distinct x values.
LineFit ols_line(std::span<const double> x, std::span<const double> y);

struct Slopes
{
    double alpha_hat = 0.0;  // |d(2 pi shift)/dP|, rad/s per mW
    double beta_hat = 0.0;   // dGamma2/dP, 1/s per mW
    double shift_intercept_hz = 0.0;
    double gamma2_intercept = 0.0;
};

Slopes power_sweep_slopes(const PowerSweepResult &data);

struct ExtractedMode
{
    coupling::SpuriousMode mode;
    Lifetime purcell = Lifetime::unbounded();
    Linewidth linewidth;
    Slopes slopes;
    double dispersive_ratio = 0.0;
};

ExtractedMode extract_mode(const Linewidth &linewidth, const Slopes &slopes, const coupling::QubitSpec &qubit,
                           std::string label = "mode");

ExtractedMode extract_mode(const ProbeSweepResult &sweep, const PowerSweepResult &power_data,
                           const coupling::QubitSpec &qubit, double center_guess_hz, std::string label = "mode");

// Coarse survey, then per feature a wide and a narrow fine sweep and a power sweep.
struct SurveyPlan
{
    double f_start_hz = 2e9;
    double f_stop_hz = 20e9;
    std::size_t coarse_points = 500;
    double wide_half_width_hz = 250e6;
    std::size_t wide_points = 201;
    double fine_half_width_fwhm = 3.0;
    std::size_t fine_points = 500;
    std::vector<double> power_fractions{0.2, 0.4, 0.6, 0.8, 1.0};
    PowerSchedule schedule;
    std::vector<double> delays = make_delays(0.0, 40e-6, 801);
    Execution exec = Execution::parallel;
};

struct FeatureOutcome
{
    Feature feature;
    std::optional<ExtractedMode> mode;
    ProbeSweepResult fine;
    PowerSweepResult power;
    std::string failure;
};

struct SurveyResult
{
    ProbeSweepResult coarse;
    DetectionStats stats;
    std::vector<FeatureOutcome> features;
};

/// Characterizes one feature given the survey baseline.
FeatureOutcome characterize_feature(const GroundTruthScenario &scenario, const std::string &qubit,
                                    const Feature &feature, double baseline, const SurveyPlan &plan,
                                    std::uint64_t feature_index);

SurveyResult run_survey(const GroundTruthScenario &scenario, const std::string &qubit, const SurveyPlan &plan);

// Multi-qubit merge of per-qubit mode tables.
struct QubitModeTable
{
    std::string qubit;
    std::vector<coupling::SpuriousMode> modes;
};

struct QubitFeatures
{
    std::string qubit;
    std::vector<double> freqs_hz;  // transition, 0-3 feature, readout resonator
};

struct MergedEntry
{
    std::string qubit;
    coupling::SpuriousMode mode;
};

struct ModeCluster
{
    double center_hz = 0.0;
    double kappa_max = 0.0;               // rad/s
    std::map<std::string, double> g;      // rad/s per qubit
    std::vector<MergedEntry> entries;
};

struct MergedReport
{
    std::vector<ModeCluster> package_modes;
    std::vector<MergedEntry> qubit_dependent;
};

/// Clusters entries whose centres lie within max(kappa/2, grid step) of the
/// running cluster mean. Entries that coincide with a feature of their own
/// sensor qubit are reported separately.
MergedReport spatial_merge(std::span<const QubitModeTable> tables, std::span<const QubitFeatures> features,
                           double grid_step_hz);

// CSV probe_freq_hz,delay_s,p_excited (long format).
struct ProbeTraces
{
    std::vector<double> probe_freqs;
    std::vector<RamseyTrace> traces;
};

ProbeTraces read_ramsey_traces(std::istream &in);
void write_ramsey_traces(std::ostream &out, std::span<const double> probe_freqs, std::span<const RamseyTrace> traces);

// CSV power_dbm,freq_shift_hz,gamma2_per_s.
PowerSweepResult read_power_sweep(std::istream &in);
void write_power_sweep(std::ostream &out, const PowerSweepResult &data);

} // namespace qpack::hidden
