#include "qpack/hidden_mode.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <random>

#include "qpack/constants.hpp"
#include "qpack/csv.hpp"
#include "qpack/errors.hpp"

namespace qpack::hidden {

namespace {

using detail::require;

double median(std::vector<double> v)
{
    require(!v.empty(), "sweep", "no valid points");
    const auto mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double upper = v[mid];
    if (v.size() % 2 == 1) {
        return upper;
    }
    const double lower = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

double median_abs_deviation(const std::vector<double> &v, double center)
{
    std::vector<double> dev;
    dev.reserve(v.size());
    for (double x : v) {
        dev.push_back(std::abs(x - center));
    }
    return median(std::move(dev));
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

// Indices of points with a successful fit, in grid order.
std::vector<std::size_t> valid_indices(const ProbeSweepResult &sweep)
{
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < sweep.fits.size(); ++i) {
        if (sweep.fits[i]) {
            idx.push_back(i);
        }
    }
    return idx;
}

void check_ascending(std::span<const double> grid, const char *field)
{
    for (std::size_t i = 1; i < grid.size(); ++i) {
        require(grid[i] > grid[i - 1], field, "grid must be strictly ascending");
    }
}

std::uint64_t stream_id(std::uint64_t tag, std::uint64_t feature, std::uint64_t point)
{
    return (tag << 40) | (feature << 20) | point;
}

} // namespace

coupling::SpuriousMode ScenarioMode::as_seen_by(const std::string &qubit) const
{
    const auto it = g.find(qubit);
    return {label, omega_m, kappa, it == g.end() ? 0.0 : it->second};
}

void validate(const GroundTruthScenario &scenario)
{
    require(scenario.photon_gain_eta > 0.0 && std::isfinite(scenario.photon_gain_eta), "photon_gain_eta",
            "must be positive");
    require(!scenario.qubits.empty(), "qubits", "scenario needs at least one qubit");
    for (const auto &q : scenario.qubits) {
        coupling::validate(q);
        const auto it = scenario.intrinsic_t2.find(q.label);
        require(it != scenario.intrinsic_t2.end(), "intrinsic_t2", "missing for qubit " + q.label);
        require(it->second > 0.0, "intrinsic_t2", "must be positive");
    }
    for (const auto &m : scenario.modes) {
        require(m.omega_m > 0.0, "omega_m", "must be positive");
        require(m.kappa > 0.0, "kappa", "must be positive");
        for (const auto &[label, g] : m.g) {
            require(g >= 0.0, "g", "per-qubit coupling must be non-negative");
        }
    }
    if (scenario.shots) {
        require(*scenario.shots > 0, "shots", "must be positive");
    }
    require(scenario.amplitude > 0.0 && scenario.amplitude <= kMaxRamseyAmplitude, "amplitude",
            "must lie in (0, 0.6]");
    require(scenario.offset - scenario.amplitude >= 0.0 && scenario.offset + scenario.amplitude <= 1.0, "offset",
            "trace must stay within [0, 1]");
    require(scenario.nominal_detuning_hz > 0.0, "nominal_detuning", "must be positive");
    require(scenario.guard_linewidths >= 0.0, "guard_linewidths", "must be non-negative");
}

const coupling::QubitSpec &find_qubit(const GroundTruthScenario &scenario, const std::string &label)
{
    for (const auto &q : scenario.qubits) {
        if (q.label == label) {
            return q;
        }
    }
    throw DomainError("qubit", "unknown qubit " + label);
}

double lorentzian_filling(double probe_hz, double omega_m, double kappa)
{
    const double u = (to_angular(probe_hz) - omega_m) / (0.5 * kappa);
    return 1.0 / (1.0 + u * u);
}

ProbeResponse probe_response(const GroundTruthScenario &scenario, const std::string &qubit, double probe_hz,
                             double power_dbm)
{
    const auto &q = find_qubit(scenario, qubit);
    const double gamma0 = 1.0 / scenario.intrinsic_t2.at(qubit);
    const double linewidth_hz = gamma0 / kTwoPi;
    const double fq = to_hz(q.omega_q);
    require(std::abs(probe_hz - fq) >= scenario.guard_linewidths * linewidth_hz, "probe_freq",
            "probe resonant with the qubit, outside the dispersive regime");
    const double p_mw = dbm_to_mw(power_dbm);

    ProbeResponse r;
    for (const auto &sm : scenario.modes) {
        const auto m = sm.as_seen_by(qubit);
        if (m.g == 0.0) {
            continue;
        }
        const double n_bar = scenario.photon_gain_eta * p_mw * lorentzian_filling(probe_hz, m.omega_m, m.kappa);
        r.shift_hz += coupling::stark_shift_per_photon(m, q.omega_q) * n_bar / kTwoPi;
        r.added_dephasing += coupling::mode_dephasing_rate(m, q.omega_q, n_bar);
    }
    r.gamma2_star = gamma0 + r.added_dephasing;
    r.ramsey_freq_hz = scenario.nominal_detuning_hz + r.shift_hz;
    return r;
}

RamseyTrace simulate_ramsey(const GroundTruthScenario &scenario, const std::string &qubit, double probe_hz,
                            double power_dbm, std::span<const double> delays, std::uint64_t stream)
{
    validate(scenario);
    const auto r = probe_response(scenario, qubit, probe_hz, power_dbm);
    RamseyTrace trace;
    trace.delays.assign(delays.begin(), delays.end());
    trace.nominal_detuning = scenario.nominal_detuning_hz;
    trace.shots = scenario.shots;
    trace.p_excited.reserve(delays.size());

    std::optional<std::mt19937_64> gen;
    if (scenario.shots) {
        std::seed_seq seq{static_cast<std::uint32_t>(scenario.seed), static_cast<std::uint32_t>(scenario.seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        gen.emplace(seq);
    }
    for (double t : delays) {
        double p = scenario.offset +
                   scenario.amplitude * std::exp(-r.gamma2_star * t) * std::cos(kTwoPi * r.ramsey_freq_hz * t);
        p = std::clamp(p, 0.0, 1.0);
        if (gen) {
            std::binomial_distribution<int> shot(*scenario.shots, p);
            p = static_cast<double>(shot(*gen)) / static_cast<double>(*scenario.shots);
        }
        trace.p_excited.push_back(p);
    }
    return trace;
}

std::vector<double> make_delays(double start_s, double stop_s, std::size_t count)
{
    return make_grid(start_s, stop_s, count);
}

std::vector<double> make_grid(double start, double stop, std::size_t count)
{
    require(count >= 2, "points", "need at least two points");
    require(stop > start, "stop", "must exceed start");
    std::vector<double> g(count);
    const double step = (stop - start) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) {
        g[i] = start + step * static_cast<double>(i);
    }
    g.back() = stop;
    return g;
}

double PowerSchedule::power_dbm(double probe_hz, double qubit_hz) const
{
    require(reference_detuning_hz > 0.0, "reference_detuning", "must be positive");
    return p0_dbm + 10.0 * std::log10(std::abs(probe_hz - qubit_hz) / reference_detuning_hz);
}

ProbeSweepResult sweep_probe(const GroundTruthScenario &scenario, const std::string &qubit,
                             std::span<const double> freq_grid, const PowerSchedule &schedule,
                             std::span<const double> delays, Execution exec, std::uint64_t stream_base)
{
    validate(scenario);
    check_ascending(freq_grid, "freq_grid");
    const double fq = to_hz(find_qubit(scenario, qubit).omega_q);
    const std::size_t n = freq_grid.size();
    ProbeSweepResult out;
    out.probe_freqs.assign(freq_grid.begin(), freq_grid.end());
    out.probe_powers.resize(n);
    out.fits.resize(n);
    out.failures.resize(n);
    for_each_index(n, exec, [&](std::size_t i) {
        const double f = freq_grid[i];
        out.probe_powers[i] = schedule.power_dbm(f, fq);
        try {
            const auto trace = simulate_ramsey(scenario, qubit, f, out.probe_powers[i], delays, stream_base + i);
            out.fits[i] = fit_ramsey(trace);
        } catch (const std::exception &e) {
            out.failures[i] = e.what();
        }
    });
    return out;
}

ProbeSweepResult sweep_traces(std::span<const double> probe_freqs, std::span<const RamseyTrace> traces,
                              Execution exec)
{
    require(probe_freqs.size() == traces.size(), "traces", "one trace per probe frequency");
    check_ascending(probe_freqs, "probe_freq_hz");
    const std::size_t n = probe_freqs.size();
    ProbeSweepResult out;
    out.probe_freqs.assign(probe_freqs.begin(), probe_freqs.end());
    out.probe_powers.assign(n, std::numeric_limits<double>::quiet_NaN());
    out.fits.resize(n);
    out.failures.resize(n);
    for_each_index(n, exec, [&](std::size_t i) {
        try {
            out.fits[i] = fit_ramsey(traces[i]);
        } catch (const std::exception &e) {
            out.failures[i] = e.what();
        }
    });
    return out;
}

DetectionStats detection_stats(const ProbeSweepResult &sweep)
{
    std::vector<double> g;
    for (const auto &f : sweep.fits) {
        if (f) {
            g.push_back(f->gamma2_star);
        }
    }
    DetectionStats s;
    s.baseline = median(g);
    s.mad = median_abs_deviation(g, s.baseline);
    s.threshold = s.baseline + 5.0 * std::max(s.mad, 1e-3 * s.baseline);
    return s;
}

std::vector<Feature> detect_features(const ProbeSweepResult &sweep)
{
    const auto stats = detection_stats(sweep);
    const double margin = stats.threshold - stats.baseline;
    const auto idx = valid_indices(sweep);
    std::vector<double> v;
    v.reserve(idx.size());
    for (auto i : idx) {
        v.push_back(sweep.fits[i]->gamma2_star);
    }
    std::vector<Feature> out;
    const std::size_t n = v.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (v[k] <= stats.threshold) {
            continue;
        }
        if (k > 0 && v[k - 1] >= v[k]) {
            continue;
        }
        if (k + 1 < n && v[k + 1] > v[k]) {
            continue;
        }
        // Topographic prominence: lowest point before reaching higher ground on each side.
        double left_min = v[k];
        std::size_t j = k;
        while (j > 0 && v[j - 1] <= v[k]) {
            --j;
            left_min = std::min(left_min, v[j]);
        }
        const bool left_open = j == 0;
        double right_min = v[k];
        j = k;
        while (j + 1 < n && v[j + 1] <= v[k]) {
            ++j;
            right_min = std::min(right_min, v[j]);
        }
        const bool right_open = j + 1 == n;
        double base;
        if (left_open && right_open) {
            base = std::min(left_min, right_min);
        } else if (left_open) {
            base = right_min;
        } else if (right_open) {
            base = left_min;
        } else {
            base = std::max(left_min, right_min);
        }
        const double prominence = v[k] - base;
        if (prominence < margin) {
            continue;
        }
        out.push_back({sweep.probe_freqs[idx[k]], v[k], prominence, idx[k]});
    }
    return out;
}

Linewidth mode_linewidth(const ProbeSweepResult &sweep, double center_guess_hz, std::optional<double> baseline)
{
    const auto idx = valid_indices(sweep);
    require(idx.size() >= 5, "sweep", "feature resolved by fewer than 5 grid points");
    std::vector<double> f, v;
    for (auto i : idx) {
        f.push_back(sweep.probe_freqs[i]);
        v.push_back(sweep.fits[i]->gamma2_star);
    }
    const std::size_t n = f.size();

    // Points farthest from the guess set the noise level and, by default, the baseline.
    std::vector<std::size_t> order(n);
    for (std::size_t k = 0; k < n; ++k) {
        order[k] = k;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return std::abs(f[a] - center_guess_hz) > std::abs(f[b] - center_guess_hz);
    });
    const std::size_t far_count = std::max<std::size_t>(1, n / 5);
    std::vector<double> far;
    for (std::size_t k = 0; k < far_count; ++k) {
        far.push_back(v[order[k]]);
    }
    const double far_median = median(far);
    const double base = baseline.value_or(far_median);
    const double noise = median_abs_deviation(far, far_median);

    std::size_t peak = order.back();
    for (;;) {
        if (peak > 0 && v[peak - 1] > v[peak]) {
            --peak;
        } else if (peak + 1 < n && v[peak + 1] > v[peak]) {
            ++peak;
        } else {
            break;
        }
    }
    const double excess = v[peak] - base;
    require(excess > 5.0 * std::max(noise, 1e-3 * base), "sweep", "feature not above baseline by the detection threshold");

    const double half = base + 0.5 * excess;
    std::size_t l = peak;
    while (l > 0 && v[l] >= half) {
        --l;
    }
    require(v[l] < half, "sweep", "lower half-maximum crossing lies outside the sweep");
    std::size_t r = peak;
    while (r + 1 < n && v[r] >= half) {
        ++r;
    }
    require(v[r] < half, "sweep", "upper half-maximum crossing lies outside the sweep");
    const double f_lo = f[l] + (half - v[l]) / (v[l + 1] - v[l]) * (f[l + 1] - f[l]);
    const double f_hi = f[r - 1] + (v[r - 1] - half) / (v[r - 1] - v[r]) * (f[r] - f[r - 1]);

    Linewidth lw;
    lw.points_above_half = r - l - 1;
    require(lw.points_above_half >= 5, "sweep", "feature resolved by fewer than 5 grid points");
    lw.fwhm_hz = f_hi - f_lo;
    lw.kappa = to_angular(lw.fwhm_hz);
    lw.center_hz = 0.5 * (f_lo + f_hi);
    lw.baseline = base;
    lw.peak = v[peak];
    return lw;
}

void validate(const PowerSweepResult &data)
{
    require(data.powers_dbm.size() == data.freq_shifts.size() && data.powers_dbm.size() == data.gamma2_values.size(),
            "power_sweep", "columns must have equal length");
    require(data.powers_dbm.size() >= 3, "power_sweep", "at least 3 points are required for regression");
    for (std::size_t i = 0; i < data.powers_dbm.size(); ++i) {
        require(std::isfinite(data.powers_dbm[i]) && std::isfinite(data.freq_shifts[i]) &&
                    std::isfinite(data.gamma2_values[i]),
                "power_sweep", "values must be finite");
    }
}

PowerSweepResult power_sweep(const GroundTruthScenario &scenario, const std::string &qubit, double probe_hz,
                             std::span<const double> powers_dbm, std::span<const double> delays, Execution exec,
                             std::uint64_t stream_base)
{
    validate(scenario);
    const std::size_t n = powers_dbm.size();
    PowerSweepResult out;
    out.powers_dbm.assign(powers_dbm.begin(), powers_dbm.end());
    out.freq_shifts.resize(n);
    out.gamma2_values.resize(n);
    std::vector<std::string> errors(n);
    for_each_index(n, exec, [&](std::size_t i) {
        try {
            const auto trace = simulate_ramsey(scenario, qubit, probe_hz, powers_dbm[i], delays, stream_base + i);
            const auto fit = fit_ramsey(trace);
            out.freq_shifts[i] = fit.f_ramsey - scenario.nominal_detuning_hz;
            out.gamma2_values[i] = fit.gamma2_star;
        } catch (const std::exception &e) {
            errors[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < n; ++i) {
        if (!errors[i].empty()) {
            throw DomainError("power_sweep", "point " + std::to_string(i) + ": " + errors[i]);
        }
    }
    return out;
}

LineFit ols_line(std::span<const double> x, std::span<const double> y)
{
    require(x.size() == y.size(), "regression", "x and y lengths differ");
    require(x.size() >= 2, "regression", "need at least two points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    require(sxx > 1e-24 * std::max(1.0, mx * mx) * n, "regression", "rank-deficient regression (powers not distinct)");
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

Slopes power_sweep_slopes(const PowerSweepResult &data)
{
    validate(data);
    std::vector<double> p, shift;
    for (std::size_t i = 0; i < data.powers_dbm.size(); ++i) {
        p.push_back(dbm_to_mw(data.powers_dbm[i]));
        shift.push_back(kTwoPi * data.freq_shifts[i]);
    }
    const auto a = ols_line(p, shift);
    const auto b = ols_line(p, data.gamma2_values);
    return {std::abs(a.slope), b.slope, a.intercept / kTwoPi, b.intercept};
}

ExtractedMode extract_mode(const Linewidth &linewidth, const Slopes &slopes, const coupling::QubitSpec &qubit,
                           std::string label)
{
    coupling::validate(qubit);
    ExtractedMode out;
    out.linewidth = linewidth;
    out.slopes = slopes;
    out.mode.label = std::move(label);
    out.mode.omega_m = to_angular(linewidth.center_hz);
    out.mode.kappa = linewidth.kappa;
    const double delta = std::abs(out.mode.omega_m - qubit.omega_q);
    out.mode.g = coupling::coupling_from_slopes(slopes.alpha_hat, slopes.beta_hat, out.mode.kappa, delta);
    require(out.mode.g > 0.0, "g", "extracted coupling is zero");
    out.purcell = Lifetime::from_rate(coupling::purcell_rate(out.mode, qubit.omega_q));
    out.dispersive_ratio = coupling::dispersive_ratio(out.mode, qubit.omega_q);
    return out;
}

ExtractedMode extract_mode(const ProbeSweepResult &sweep, const PowerSweepResult &power_data,
                           const coupling::QubitSpec &qubit, double center_guess_hz, std::string label)
{
    return extract_mode(mode_linewidth(sweep, center_guess_hz), power_sweep_slopes(power_data), qubit,
                        std::move(label));
}

FeatureOutcome characterize_feature(const GroundTruthScenario &scenario, const std::string &qubit,
                                    const Feature &feature, double baseline, const SurveyPlan &plan,
                                    std::uint64_t feature_index)
{
    FeatureOutcome out;
    out.feature = feature;
    try {
        const auto &q = find_qubit(scenario, qubit);
        const double fq = to_hz(q.omega_q);
        const auto wide_grid = make_grid(feature.center_hz - plan.wide_half_width_hz,
                                         feature.center_hz + plan.wide_half_width_hz, plan.wide_points);
        const auto wide = sweep_probe(scenario, qubit, wide_grid, plan.schedule, plan.delays, plan.exec,
                                      stream_id(1, feature_index, 0));
        const auto coarse_lw = mode_linewidth(wide, feature.center_hz, baseline);

        const double half = plan.fine_half_width_fwhm * coarse_lw.fwhm_hz;
        const auto fine_grid = make_grid(coarse_lw.center_hz - half, coarse_lw.center_hz + half, plan.fine_points);
        out.fine = sweep_probe(scenario, qubit, fine_grid, plan.schedule, plan.delays, plan.exec,
                               stream_id(2, feature_index, 0));
        const auto lw = mode_linewidth(out.fine, coarse_lw.center_hz, baseline);

        const double p_ref = plan.schedule.power_dbm(lw.center_hz, fq);
        std::vector<double> powers;
        for (double frac : plan.power_fractions) {
            require(frac > 0.0, "power_fractions", "must be positive");
            powers.push_back(p_ref + 10.0 * std::log10(frac));
        }
        out.power = power_sweep(scenario, qubit, lw.center_hz, powers, plan.delays, plan.exec,
                                stream_id(3, feature_index, 0));
        out.mode = extract_mode(lw, power_sweep_slopes(out.power), q, "M" + std::to_string(feature_index + 1));
    } catch (const std::exception &e) {
        out.failure = e.what();
    }
    return out;
}

SurveyResult run_survey(const GroundTruthScenario &scenario, const std::string &qubit, const SurveyPlan &plan)
{
    SurveyResult out;
    const auto grid = make_grid(plan.f_start_hz, plan.f_stop_hz, plan.coarse_points);
    out.coarse = sweep_probe(scenario, qubit, grid, plan.schedule, plan.delays, plan.exec, stream_id(0, 0, 0));
    out.stats = detection_stats(out.coarse);
    const auto features = detect_features(out.coarse);
    for (std::size_t k = 0; k < features.size(); ++k) {
        out.features.push_back(characterize_feature(scenario, qubit, features[k], out.stats.baseline, plan, k));
    }
    return out;
}

MergedReport spatial_merge(std::span<const QubitModeTable> tables, std::span<const QubitFeatures> features,
                           double grid_step_hz)
{
    require(!tables.empty(), "tables", "at least one mode table is required");
    require(grid_step_hz >= 0.0, "grid_step", "must be non-negative");
    MergedReport report;
    std::vector<MergedEntry> candidates;
    for (const auto &t : tables) {
        const QubitFeatures *own = nullptr;
        for (const auto &qf : features) {
            if (qf.qubit == t.qubit) {
                own = &qf;
            }
        }
        for (const auto &m : t.modes) {
            coupling::validate(m);
            const double fm = to_hz(m.omega_m);
            const double tol = std::max(0.5 * to_hz(m.kappa), grid_step_hz);
            bool flagged = false;
            if (own) {
                for (double f : own->freqs_hz) {
                    flagged = flagged || std::abs(f - fm) <= tol;
                }
            }
            (flagged ? report.qubit_dependent : candidates).push_back({t.qubit, m});
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(), [](const MergedEntry &a, const MergedEntry &b) {
        return a.mode.omega_m < b.mode.omega_m;
    });

    double lo = 0.0, sum = 0.0;
    for (const auto &e : candidates) {
        const double fm = to_hz(e.mode.omega_m);
        bool joined = false;
        if (!report.package_modes.empty()) {
            auto &c = report.package_modes.back();
            const double kappa_max = std::max(c.kappa_max, e.mode.kappa);
            const double tol = std::max(0.5 * to_hz(kappa_max), grid_step_hz);
            const double span_limit = std::max(to_hz(kappa_max), grid_step_hz);
            if (std::abs(fm - c.center_hz) <= tol && fm - lo <= span_limit) {
                c.entries.push_back(e);
                c.kappa_max = kappa_max;
                sum += fm;
                c.center_hz = sum / static_cast<double>(c.entries.size());
                auto &g = c.g[e.qubit];
                g = std::max(g, e.mode.g);
                joined = true;
            }
        }
        if (!joined) {
            ModeCluster c;
            c.center_hz = fm;
            c.kappa_max = e.mode.kappa;
            c.g[e.qubit] = e.mode.g;
            c.entries.push_back(e);
            report.package_modes.push_back(std::move(c));
            lo = fm;
            sum = fm;
        }
    }
    return report;
}

ProbeTraces read_ramsey_traces(std::istream &in)
{
    const auto table = CsvTable::read(in);
    table.require_columns({"probe_freq_hz", "delay_s", "p_excited"});
    std::map<double, RamseyTrace> groups;
    for (std::size_t r = 0; r < table.rows(); ++r) {
        auto &t = groups[table.number(r, "probe_freq_hz")];
        t.delays.push_back(table.number(r, "delay_s"));
        t.p_excited.push_back(table.number(r, "p_excited"));
    }
    ProbeTraces out;
    for (auto &[f, t] : groups) {
        out.probe_freqs.push_back(f);
        out.traces.push_back(std::move(t));
    }
    return out;
}

void write_ramsey_traces(std::ostream &out, std::span<const double> probe_freqs, std::span<const RamseyTrace> traces)
{
    require(probe_freqs.size() == traces.size(), "traces", "one trace per probe frequency");
    out << "probe_freq_hz,delay_s,p_excited\n";
    for (std::size_t i = 0; i < traces.size(); ++i) {
        for (std::size_t k = 0; k < traces[i].delays.size(); ++k) {
            out << format_number(probe_freqs[i]) << ',' << format_number(traces[i].delays[k]) << ','
                << format_number(traces[i].p_excited[k]) << '\n';
        }
    }
}

PowerSweepResult read_power_sweep(std::istream &in)
{
    const auto table = CsvTable::read(in);
    table.require_columns({"power_dbm", "freq_shift_hz", "gamma2_per_s"});
    PowerSweepResult out;
    for (std::size_t r = 0; r < table.rows(); ++r) {
        out.powers_dbm.push_back(table.number(r, "power_dbm"));
        out.freq_shifts.push_back(table.number(r, "freq_shift_hz"));
        out.gamma2_values.push_back(table.number(r, "gamma2_per_s"));
    }
    return out;
}

void write_power_sweep(std::ostream &out, const PowerSweepResult &data)
{
    out << "power_dbm,freq_shift_hz,gamma2_per_s\n";
    for (std::size_t i = 0; i < data.powers_dbm.size(); ++i) {
        out << format_number(data.powers_dbm[i]) << ',' << format_number(data.freq_shifts[i]) << ','
            << format_number(data.gamma2_values[i]) << '\n';
    }
}

} // namespace qpack::hidden
