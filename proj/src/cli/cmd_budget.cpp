#include <algorithm>
#include <cmath>
#include <fstream>

#include "command.hpp"
#include "qpack/constants.hpp"
#include "qpack/coupling_budget.hpp"
#include "qpack/errors.hpp"
#include "qpack/hidden_mode.hpp"

namespace qpack::cli {

namespace {

constexpr double kGHz = 1e9;
constexpr double kMHz = 1e6;
constexpr double kUs = 1e-6;

void declare_qubit(Command &c)
{
    c.number("--qubit-freq-ghz", "qubit.freq_hz", kGHz, "Sensor qubit frequency (GHz)");
    c.text("--qubits", "qubits.file", "Qubit table CSV used when the frequency is not given");
    c.text("--qubit", "qubit.label", "Qubit label", "q");
}

// Qubit from explicit frequency, or looked up by label in a qubit table.
coupling::QubitSpec resolve_qubit(Command &c)
{
    const auto label = c.str("qubit.label");
    if (const auto f = c.opt("qubit.freq_hz")) {
        coupling::QubitSpec q{label, to_angular(*f), std::nullopt, std::nullopt, std::nullopt};
        coupling::validate(q);
        return q;
    }
    const auto path = c.opt_text("qubits.file");
    if (!path) {
        throw DomainError("qubit.freq_hz", "required (flag --qubit-freq-ghz) unless --qubits and --qubit are given");
    }
    for (const auto &q : coupling::read_qubit_table_file(*path)) {
        if (q.label == label) {
            return q;
        }
    }
    throw DomainError("qubit.label", "qubit '" + label + "' not found in " + *path);
}

Json mode_json(const coupling::SpuriousMode &m)
{
    return {{"label", m.label}, {"f_m_hz", to_hz(m.omega_m)}, {"kappa_hz", to_hz(m.kappa)}, {"g_hz", to_hz(m.g)}};
}

Table budget_table(const std::vector<coupling::ModeTableRow> &rows)
{
    Table t{{"label", "f_m_hz", "kappa_hz", "g_hz", "t_purcell_s"}, {}};
    for (const auto &r : rows) {
        t.rows.push_back({r.label, r.f_m_hz, r.kappa_hz, r.g_hz, r.t_purcell_s ? Json(*r.t_purcell_s) : Json(nullptr)});
    }
    return t;
}

void purcell(Command &c, Report &r)
{
    const auto rows = coupling::read_mode_table_file(c.str("modes.file"));
    const auto q = resolve_qubit(c);
    std::vector<coupling::SpuriousMode> modes;
    std::vector<coupling::ModeTableRow> out_rows;
    Json list = Json::array();
    bool all_listed = !rows.empty();
    double listed_rate = 0.0;
    for (const auto &row : rows) {
        const auto m = coupling::to_mode(row);
        modes.push_back(m);
        const double t = 1.0 / coupling::purcell_rate(m, q.omega_q);
        Json e = mode_json(m);
        e["t_purcell_s"] = t;
        if (row.t_purcell_s) {
            e["listed_t_purcell_s"] = *row.t_purcell_s;
            e["relative_deviation"] = t / *row.t_purcell_s - 1.0;
            listed_rate += 1.0 / *row.t_purcell_s;
        } else {
            all_listed = false;
        }
        list.push_back(e);
        out_rows.push_back(coupling::to_row(m, t));
    }
    const auto budget = coupling::purcell_budget(modes, q.omega_q);
    r.results["modes"] = list;
    r.results["total_rate_per_s"] = budget.total_rate;
    r.results["total_t1_s"] = lifetime_json(budget.total_t1_limit.is_unbounded() ? 0.0 : budget.total_t1_limit.seconds(),
                                            budget.total_t1_limit.is_unbounded());
    if (all_listed) {
        r.results["aggregate_from_listed_s"] = 1.0 / listed_rate;
    }
    if (const auto mat = c.opt("material.t1_s")) {
        const auto combined = coupling::package_t1_limit(budget.total_t1_limit, Lifetime::from_seconds(*mat));
        r.results["combined_t1_s"] = lifetime_json(combined.is_unbounded() ? 0.0 : combined.seconds(), combined.is_unbounded());
    }
    r.table = budget_table(out_rows);
}

hidden::GroundTruthScenario scenario_from(Command &c, const Report &r, const coupling::QubitSpec &q)
{
    hidden::GroundTruthScenario s;
    s.qubits = {q};
    for (const auto &row : coupling::read_mode_table_file(c.str("modes.file"))) {
        const auto m = coupling::to_mode(row);
        s.modes.push_back({m.label, m.omega_m, m.kappa, {{q.label, m.g}}});
    }
    s.photon_gain_eta = c.num("hidden.eta");
    s.intrinsic_t2[q.label] = c.num("qubit.t2_star_s");
    const int shots = c.integer("hidden.shots");
    detail::require(shots >= 0, "hidden.shots", "must be non-negative");
    if (shots > 0) {
        s.shots = shots;
    }
    s.seed = r.seed;
    s.nominal_detuning_hz = c.num("hidden.nominal_detuning_hz");
    hidden::validate(s);
    return s;
}

hidden::SurveyPlan plan_from(Command &c, const coupling::QubitSpec &q)
{
    hidden::SurveyPlan plan;
    plan.f_start_hz = c.num("sweep.f_start_hz");
    plan.f_stop_hz = c.num("sweep.f_stop_hz");
    const int points = c.integer("sweep.points");
    detail::require(points >= 5, "sweep.points", "need at least 5 points");
    plan.coarse_points = static_cast<std::size_t>(points);
    plan.schedule.p0_dbm = c.num("hidden.p0_dbm");
    plan.schedule.reference_detuning_hz = c.num("hidden.reference_detuning_hz");
    const int delay_points = c.integer("hidden.delay_points");
    detail::require(delay_points >= 8, "hidden.delay_points", "need at least 8 delays");
    plan.delays = hidden::make_delays(0.0, c.num("hidden.delay_max_s"), static_cast<std::size_t>(delay_points));
    detail::require(plan.f_start_hz > 0.0, "sweep.f_start_hz", "must be positive");
    (void)q;
    return plan;
}

Json fit_stats_json(const hidden::DetectionStats &s)
{
    return {{"baseline_gamma2_per_s", s.baseline}, {"mad_per_s", s.mad}, {"threshold_per_s", s.threshold}};
}

Json extracted_json(const hidden::ExtractedMode &m)
{
    Json j = mode_json(m.mode);
    j["t_purcell_s"] = m.purcell.seconds();
    j["dispersive_ratio"] = m.dispersive_ratio;
    j["fwhm_hz"] = m.linewidth.fwhm_hz;
    j["alpha_hat_rad_per_s_per_mw"] = m.slopes.alpha_hat;
    j["beta_hat_per_s_per_mw"] = m.slopes.beta_hat;
    return j;
}

Table sweep_table(const hidden::ProbeSweepResult &sweep)
{
    Table t{{"probe_freq_hz", "power_dbm", "f_ramsey_hz", "gamma2_per_s"}, {}};
    for (std::size_t i = 0; i < sweep.probe_freqs.size(); ++i) {
        const auto &f = sweep.fits[i];
        t.rows.push_back({sweep.probe_freqs[i], number(sweep.probe_powers[i]),
                          f ? Json(f->f_ramsey) : Json(nullptr), f ? Json(f->gamma2_star) : Json(nullptr)});
    }
    return t;
}

void write_modes_file(const std::string &path, const std::vector<coupling::ModeTableRow> &rows)
{
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write " + path);
    }
    coupling::write_mode_table(out, rows);
}

void hidden_simulate(Command &c, Report &r)
{
    const auto q = resolve_qubit(c);
    const auto scenario = scenario_from(c, r, q);
    const auto plan = plan_from(c, q);
    r.extra_metadata["twpa_bypass"] = c.enabled("hidden.twpa_bypass");
    const auto survey = hidden::run_survey(scenario, q.label, plan);

    Json features = Json::array();
    std::vector<coupling::ModeTableRow> rows;
    std::vector<coupling::SpuriousMode> found;
    for (const auto &f : survey.features) {
        Json e{{"center_hz", f.feature.center_hz}, {"peak_gamma2_per_s", f.feature.peak_gamma2},
               {"prominence_per_s", f.feature.prominence}};
        if (f.mode) {
            e["extracted"] = extracted_json(*f.mode);
            rows.push_back(coupling::to_row(f.mode->mode, f.mode->purcell.seconds()));
            found.push_back(f.mode->mode);
        } else {
            e["failure"] = f.failure;
            r.warnings.push_back("feature at " + std::to_string(f.feature.center_hz) + " Hz: " + f.failure);
        }
        features.push_back(e);
    }
    std::size_t failed_points = 0;
    for (const auto &msg : survey.coarse.failures) {
        failed_points += msg.empty() ? 0 : 1;
    }
    r.results["coarse"] = fit_stats_json(survey.stats);
    r.results["coarse"]["failed_points"] = failed_points;
    r.results["features"] = features;
    if (!found.empty()) {
        const auto budget = coupling::purcell_budget(found, q.omega_q);
        r.results["purcell_total_t1_s"] = budget.total_t1_limit.seconds();
    }
    if (const auto path = c.opt_text("hidden.traces_out")) {
        const auto grid = hidden::make_grid(plan.f_start_hz, plan.f_stop_hz, plan.coarse_points);
        std::vector<double> freqs;
        std::vector<hidden::RamseyTrace> traces;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            try {
                traces.push_back(hidden::simulate_ramsey(scenario, q.label, grid[i],
                                                         plan.schedule.power_dbm(grid[i], to_hz(q.omega_q)),
                                                         plan.delays, i));
                freqs.push_back(grid[i]);
            } catch (const DomainError &) {
                // Probes refused by the resonance guard have no trace.
            }
        }
        std::ofstream out(*path);
        if (!out) {
            throw IoError("cannot write " + *path);
        }
        hidden::write_ramsey_traces(out, freqs, traces);
    }
    if (const auto path = c.opt_text("hidden.power_out"); path && !survey.features.empty()) {
        std::ofstream out(*path);
        if (!out) {
            throw IoError("cannot write " + *path);
        }
        hidden::write_power_sweep(out, survey.features.back().power);
    }
    if (const auto path = c.opt_text("hidden.modes_out")) {
        write_modes_file(*path, rows);
    }
    r.table = sweep_table(survey.coarse);
}

void hidden_analyze(Command &c, Report &r)
{
    const auto q = resolve_qubit(c);
    const auto path = c.str("hidden.traces_file");
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    const auto data = hidden::read_ramsey_traces(in);
    const auto sweep = hidden::sweep_traces(data.probe_freqs, data.traces);
    const auto stats = hidden::detection_stats(sweep);
    const auto features = hidden::detect_features(sweep);
    r.results["sweep"] = fit_stats_json(stats);
    Json list = Json::array();
    for (const auto &f : features) {
        list.push_back({{"center_hz", f.center_hz}, {"peak_gamma2_per_s", f.peak_gamma2},
                        {"prominence_per_s", f.prominence}});
    }
    r.results["features"] = list;

    if (const auto power_path = c.opt_text("hidden.power_file")) {
        std::ifstream pin(*power_path);
        if (!pin) {
            throw IoError("cannot open " + *power_path);
        }
        const auto power = hidden::read_power_sweep(pin);
        auto center = c.opt("hidden.center_hz");
        if (!center) {
            detail::require(!features.empty(), "hidden.center_hz", "no feature detected; give --center-ghz");
            const auto strongest = std::max_element(features.begin(), features.end(), [](const auto &a, const auto &b) {
                return a.peak_gamma2 < b.peak_gamma2;
            });
            center = strongest->center_hz;
        }
        const auto m = hidden::extract_mode(sweep, power, q, *center, c.str("hidden.label"));
        r.results["extracted"] = extracted_json(m);
        if (const auto out_path = c.opt_text("hidden.modes_out")) {
            write_modes_file(*out_path, {coupling::to_row(m.mode, m.purcell.seconds())});
        }
    }
    r.table = sweep_table(sweep);
}

void hidden_merge(Command &c, Report &r)
{
    std::vector<hidden::QubitModeTable> tables;
    for (const auto &item : c.items("merge.tables")) {
        const auto eq = item.find('=');
        detail::require(eq != std::string::npos && eq > 0, "merge.tables", "expected QUBIT=FILE, got '" + item + "'");
        hidden::QubitModeTable t;
        t.qubit = item.substr(0, eq);
        for (const auto &row : coupling::read_mode_table_file(item.substr(eq + 1))) {
            t.modes.push_back(coupling::to_mode(row));
        }
        tables.push_back(std::move(t));
    }
    detail::require(!tables.empty(), "merge.tables", "at least one --table QUBIT=FILE is required");
    std::vector<hidden::QubitFeatures> features;
    if (const auto path = c.opt_text("qubits.file")) {
        for (const auto &q : coupling::read_qubit_table_file(*path)) {
            hidden::QubitFeatures f{q.label, {to_hz(q.omega_q)}};
            if (q.readout_freq) {
                f.freqs_hz.push_back(*q.readout_freq);
            }
            features.push_back(std::move(f));
        }
    }
    const auto merged = hidden::spatial_merge(tables, features, c.num("merge.grid_step_hz"));
    Json clusters = Json::array();
    Table t{{"center_hz", "kappa_max_hz", "qubits"}, {}};
    for (const auto &cl : merged.package_modes) {
        Json g = Json::object();
        for (const auto &[qubit, value] : cl.g) {
            g[qubit] = to_hz(value);
        }
        clusters.push_back({{"center_hz", cl.center_hz}, {"kappa_max_hz", to_hz(cl.kappa_max)}, {"g_hz", g}});
        t.rows.push_back({cl.center_hz, to_hz(cl.kappa_max), cl.g.size()});
    }
    Json flagged = Json::array();
    for (const auto &e : merged.qubit_dependent) {
        Json j = mode_json(e.mode);
        j["qubit"] = e.qubit;
        flagged.push_back(j);
    }
    r.results["package_modes"] = clusters;
    r.results["qubit_dependent"] = flagged;
    r.table = std::move(t);
}

} // namespace

void register_budget_commands(CLI::App &app, CommandSet &set)
{
    auto &c = set.add(&app, "purcell", "purcell", "Purcell lifetimes and aggregate T1 from a mode table");
    c.text("--modes", "modes.file", "Mode table CSV");
    declare_qubit(c);
    c.number("--material-limit-s", "material.t1_s", 1.0, "Material-loss T1 limit to combine (s)");
    c.handler = purcell;
}

void register_hidden_mode_commands(CLI::App &app, CommandSet &set)
{
    auto *hm = app.add_subcommand("hidden-mode", "Probe-tone Ramsey spectroscopy of package modes");
    hm->require_subcommand(1);
    hm->fallthrough();
    {
        auto &c = set.add(hm, "simulate", "hidden-mode simulate", "Simulate a survey and extract the modes");
        c.text("--modes", "modes.file", "Ground-truth mode table CSV");
        declare_qubit(c);
        c.number("--t2-us", "qubit.t2_star_s", kUs, "Intrinsic T2* (us)", 53.2e-6);
        c.number("--eta", "hidden.eta", 1.0, "Photons per mW at the generator", 1e6);
        c.number("--p0-dbm", "hidden.p0_dbm", 1.0, "Probe power at the reference detuning (dBm)", -50.0);
        c.number("--ref-detuning-ghz", "hidden.reference_detuning_hz", kGHz, "Reference detuning (GHz)", 1e9);
        c.number("--detuning-mhz", "hidden.nominal_detuning_hz", kMHz, "Ramsey detuning (MHz)", 2e6);
        c.number("--shots", "hidden.shots", 1.0, "Shots per point, 0 for noiseless", 0.0);
        c.number("--delay-max-us", "hidden.delay_max_s", kUs, "Longest Ramsey delay (us)", 40e-6);
        c.number("--delay-points", "hidden.delay_points", 1.0, "Ramsey delays per trace", 801.0);
        c.number("--f-start-ghz", "sweep.f_start_hz", kGHz, "Survey start (GHz)", 2e9);
        c.number("--f-stop-ghz", "sweep.f_stop_hz", kGHz, "Survey stop (GHz)", 20e9);
        c.number("--points", "sweep.points", 1.0, "Survey points", 500.0);
        c.toggle("--twpa-bypass", "hidden.twpa_bypass", "Record that the amplifier was bypassed");
        c.text("--traces-out", "hidden.traces_out", "Write survey Ramsey traces CSV");
        c.text("--power-out", "hidden.power_out", "Write the last feature's power sweep CSV");
        c.text("--modes-out", "hidden.modes_out", "Write the extracted mode table CSV");
        c.handler = hidden_simulate;
    }
    {
        auto &c = set.add(hm, "analyze", "hidden-mode analyze", "Fit measured Ramsey traces and extract a mode");
        c.text("--traces", "hidden.traces_file", "Ramsey traces CSV");
        c.text("--power", "hidden.power_file", "Power sweep CSV");
        declare_qubit(c);
        c.number("--center-ghz", "hidden.center_hz", kGHz, "Feature to extract (GHz)");
        c.text("--label", "hidden.label", "Label for the extracted mode", "mode");
        c.text("--modes-out", "hidden.modes_out", "Write the extracted mode table CSV");
        c.handler = hidden_analyze;
    }
    {
        auto &c = set.add(hm, "merge", "hidden-mode merge", "Merge per-qubit mode tables");
        c.list("--table", "merge.tables", "QUBIT=FILE mode table, repeatable");
        c.text("--qubits", "qubits.file", "Qubit table CSV supplying transition and readout frequencies");
        c.number("--grid-step-mhz", "merge.grid_step_hz", kMHz, "Survey grid step (MHz)", 0.0);
        c.handler = hidden_merge;
    }
}

} // namespace qpack::cli
