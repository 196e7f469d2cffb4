#include <algorithm>
#include <cmath>

#include "command.hpp"
#include "qpack/constants.hpp"
#include "qpack/design_rules.hpp"
#include "qpack/errors.hpp"
#include "qpack/hidden_mode.hpp"
#include "qpack/ladder.hpp"
#include "qpack/line_models.hpp"
#include "qpack/match_synth.hpp"
#include "qpack/material_loss.hpp"
#include "qpack/mode_spectrum.hpp"

namespace qpack::cli {

namespace {

constexpr double kGHz = 1e9;
constexpr double kMHz = 1e6;
constexpr double kMm = 1e-3;
constexpr double kUm = 1e-6;
constexpr double kNh = 1e-9;
constexpr double kFf = 1e-15;

Json mismatch_json(double gamma_mag)
{
    const auto m = line::vswr_and_mismatch(gamma_mag);
    return {{"gamma", gamma_mag},
            {"vswr", number(m.vswr)},
            {"reflected_fraction", m.reflected_fraction},
            {"reflected_percent", 100.0 * m.reflected_fraction},
            {"mismatch_loss_db", number(m.mismatch_loss_db)}};
}

void declare_sweep(Command &c, double start_hz, double stop_hz, double points)
{
    c.number("--f-start-ghz", "sweep.f_start_hz", kGHz, "Sweep start frequency (GHz)", start_hz);
    c.number("--f-stop-ghz", "sweep.f_stop_hz", kGHz, "Sweep stop frequency (GHz)", stop_hz);
    c.number("--points", "sweep.points", 1.0, "Sweep points", points);
}

std::vector<double> sweep_grid(Command &c)
{
    const int points = c.integer("sweep.points");
    detail::require(points >= 2, "sweep.points", "need at least two points");
    return hidden::make_grid(c.num("sweep.f_start_hz"), c.num("sweep.f_stop_hz"), static_cast<std::size_t>(points));
}

void t1_budget(Command &c, Report &r)
{
    const auto entries = loss::read_materials_file(c.str("materials.file"));
    const double nu = c.num("qubit.freq_hz");
    Json rows = Json::array();
    Table t{{"label", "inv_q_total", "t1_s"}, {}};
    for (const auto &e : entries) {
        const auto life = loss::t1_limit(e, nu);
        const Json t1 = lifetime_json(life.is_unbounded() ? 0.0 : life.seconds(), life.is_unbounded());
        rows.push_back({{"label", e.label}, {"inv_q_total", e.total_inverse_q()}, {"t1_s", t1}});
        t.rows.push_back({e.label, e.total_inverse_q(), t1});
    }
    r.results["materials"] = rows;
    r.table = std::move(t);
}

void line_wirebond(Command &c, Report &r)
{
    const double z0 = c.num("line.z0_ohm");
    auto l = c.opt("wirebond.inductance_h");
    auto cap = c.opt("wirebond.capacitance_f");
    if (!l || !cap) {
        const line::WirebondGeometry g{c.num("wirebond.length_m"), c.num("wirebond.diameter_m"),
                                       c.num("wirebond.height_m")};
        if (!l) {
            l = line::wirebond_inductance(g);
        }
        if (!cap) {
            cap = line::wirebond_capacitance(g);
        }
    }
    detail::require(*l > 0.0, "wirebond.inductance_h", "must be positive");
    detail::require(*cap > 0.0, "wirebond.capacitance_f", "must be positive");
    const double z = std::abs(line::char_impedance({0.0, *l, 0.0, *cap}, kTwoPi * kGHz));
    const double gamma = std::abs(line::reflection_coefficient(z, z0));
    r.results["inductance_h"] = *l;
    r.results["capacitance_f"] = *cap;
    r.results["impedance_ohm"] = z;
    r.results["mismatch"] = mismatch_json(gamma);
    const int count = c.integer("wirebond.count");
    if (count > 1) {
        const auto p = line::parallel_wirebonds(*l, *cap, count, c.num("wirebond.k_mutual"));
        const double gp = std::abs(line::reflection_coefficient(p.impedance, z0));
        r.results["parallel"] = {{"count", count},
                                 {"inductance_h", p.inductance},
                                 {"capacitance_f", p.capacitance},
                                 {"impedance_ohm", p.impedance},
                                 {"mismatch", mismatch_json(gp)}};
    }
}

void line_mismatch(Command &c, Report &r)
{
    const double z = c.num("line.load_ohm");
    const double z0 = c.num("line.z0_ohm");
    detail::require(z > 0.0, "line.load_ohm", "must be positive");
    r.results["mismatch"] = mismatch_json(std::abs(line::reflection_coefficient(z, z0)));
}

void line_via(Command &c, Report &r)
{
    const line::ViaGeometry g{c.num("via.height_m"), c.num("via.drill_m"), c.num("via.antipad_m"), c.num("via.pad_m"),
                              c.num("via.eps_r")};
    const auto p = line::via_parasitics(g);
    r.results = {{"inductance_h", p.inductance}, {"capacitance_f", p.capacitance}, {"f_res_hz", p.f_res}};
}

void line_fence(Command &c, Report &r)
{
    const double spacing = line::via_fence_max_spacing(c.num("fence.f_max_hz"), c.num("fence.eps_r"));
    r.results["max_spacing_m"] = spacing;
    if (const auto pitch = c.opt("fence.pitch_m")) {
        r.results["pitch_m"] = *pitch;
        r.results["status"] = *pitch <= spacing ? "pass" : "fail";
    }
}

void line_ladder(Command &c, Report &r)
{
    line::LadderSection s;
    s.series_inductance = c.num("ladder.series_inductance_h");
    s.shunt_capacitance = c.num("ladder.shunt_capacitance_f");
    s.mutual_inductance = c.num("ladder.mutual_inductance_h");
    s.mutual_capacitance = c.num("ladder.mutual_capacitance_f");
    line::LadderNetwork net;
    const int sections = c.integer("ladder.sections");
    detail::require(sections >= 1, "ladder.sections", "must be at least 1");
    net.sections.assign(static_cast<std::size_t>(sections), s);
    net.n_ground_equivalent = c.integer("ladder.n_ground");
    net.z0 = c.num("line.z0_ohm");
    line::validate(net);
    const auto grid = sweep_grid(c);
    const auto pts = line::ladder_crosstalk(net, grid);
    Table t{{"freq_hz", "transfer_db"}, {}};
    double peak = line::kTransferFloorDb;
    double peak_f = grid.front();
    int singular = 0;
    for (const auto &p : pts) {
        t.rows.push_back({p.freq_hz, p.singular ? Json(nullptr) : Json(p.transfer_db)});
        singular += p.singular ? 1 : 0;
        if (!p.singular && p.transfer_db > peak) {
            peak = p.transfer_db;
            peak_f = p.freq_hz;
        }
    }
    r.results["resonance_hz"] = line::ladder_resonance_hz(s, net.n_ground_equivalent);
    r.results["peak_transfer_db"] = peak;
    r.results["peak_freq_hz"] = peak_f;
    r.results["singular_points"] = singular;
    if (singular > 0) {
        r.warnings.push_back(std::to_string(singular) + " sweep points were singular and left blank");
    }
    r.table = std::move(t);
}

match::FilterSpec filter_spec(Command &c)
{
    match::FilterSpec spec;
    spec.family = match::parse_family(c.str("match.family"));
    const auto ripple = c.opt("match.ripple_db");
    spec.ripple_db = ripple.value_or(spec.family == match::FilterFamily::chebyshev ? match::kDefaultChebyshevRippleDb : 0.0);
    spec.order = c.integer("match.order");
    spec.fc = c.num("match.fc_hz");
    spec.z0 = c.num("line.z0_ohm");
    match::validate(spec);
    return spec;
}

void declare_filter(Command &c)
{
    c.number("--l-parasitic-nh", "match.l_parasitic_h", kNh, "Bond inductance to compensate (nH)");
    c.number("--c-parasitic-ff", "match.c_parasitic_f", kFf, "Chip-side parasitic capacitance (fF)", 0.0);
    c.text("--family", "match.family", "butterworth or chebyshev", "butterworth");
    c.number("--ripple-db", "match.ripple_db", 1.0, "Chebyshev passband ripple (dB), default 3");
    c.number("--order", "match.order", 1.0, "Prototype order", 3.0);
    c.number("--fc-ghz", "match.fc_hz", kGHz, "Cutoff frequency (GHz)", 10e9);
    c.number("--z0", "line.z0_ohm", 1.0, "Reference impedance (ohm)", 50.0);
}

Json synth_json(const match::SynthesizedMatch &m, const match::FilterSpec &spec)
{
    return {{"c1_f", m.c1},
            {"l_h", m.l},
            {"c3_f", m.c3},
            {"c_parasitic_f", m.c_parasitic},
            {"feasible", m.feasible},
            {"margin_h", m.margin},
            {"ripple_db", m.ripple_db},
            {"l_max_h", match::max_compensable_inductance(spec)},
            {"g_values", match::prototype_g_values(spec.family, spec.order, spec.ripple_db)}};
}

void match_synth(Command &c, Report &r)
{
    const auto spec = filter_spec(c);
    const double lp = c.num("match.l_parasitic_h");
    const double cp = c.num("match.c_parasitic_f");
    const auto m = match::synthesize_match(lp, cp, spec);
    r.results = synth_json(m, spec);
    const auto lc = match::synthesize_lc_match(lp, cp, spec.z0);
    r.results["lc_match"] = {{"c_tuning_f", lc.c_tuning}, {"impedance_ohm", lc.impedance}, {"feasible", lc.feasible}};
    if (!m.feasible) {
        r.warnings.push_back("bond inductance exceeds what the prototype can absorb at this cutoff");
    }
    const auto start = c.opt("match.fc_sweep_start_hz");
    const auto stop = c.opt("match.fc_sweep_stop_hz");
    if (start || stop) {
        detail::require(start && stop, "match.fc_sweep_stop_hz", "sweep needs both start and stop");
        const int points = c.integer("match.fc_sweep_points");
        Table t{{"fc_hz", "l_max_h"}, {}};
        for (double fc : hidden::make_grid(*start, *stop, static_cast<std::size_t>(std::max(points, 2)))) {
            auto s = spec;
            s.fc = fc;
            t.rows.push_back({fc, match::max_compensable_inductance(s)});
        }
        r.table = std::move(t);
    }
}

void match_response(Command &c, Report &r)
{
    const auto spec = filter_spec(c);
    const auto m = match::synthesize_match(c.num("match.l_parasitic_h"), c.num("match.c_parasitic_f"), spec);
    r.results = synth_json(m, spec);
    r.results["s21_db_at_fc"] = 20.0 * std::log10(std::abs(match::filter_s21(m, spec.z0, spec.fc)));
    const auto grid = sweep_grid(c);
    const auto db = match::filter_response(m, spec.z0, grid);
    Table t{{"freq_hz", "s21_db"}, {}};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        t.rows.push_back({grid[i], number(db[i])});
    }
    r.table = std::move(t);
}

Table mode_table(const std::vector<modes::ModePrediction> &list)
{
    Table t{{"mode", "kind", "n", "m", "l", "freq_hz"}, {}};
    for (const auto &p : list) {
        t.rows.push_back({modes::mode_name(p.index), modes::to_string(p.index.kind), p.index.n, p.index.m, p.index.l,
                          p.frequency});
    }
    return t;
}

void modes_cavity(Command &c, Report &r)
{
    const modes::CavityGeometry g{c.num("cavity.a_m"), c.num("cavity.b_m"), c.num("cavity.d_m"), c.num("cavity.eps_r"),
                                  1.0};
    const auto list = modes::list_modes_below(g, c.num("cavity.f_max_hz"));
    r.results["count"] = list.size();
    if (!list.empty()) {
        r.results["fundamental"] = {{"mode", modes::mode_name(list.front().index)},
                                    {"freq_hz", list.front().frequency}};
    }
    r.table = mode_table(list);
}

void modes_chip(Command &c, Report &r)
{
    const double a = c.num("chip.a_m");
    const double b = c.num("chip.b_m");
    const double eps = c.num("chip.eps_r");
    r.results["fundamental_hz"] = modes::chip_mode_freq(a, b, eps);
    r.results["mode"] = "TM110";
    if (const auto fmax = c.opt("chip.f_max_hz")) {
        r.table = mode_table(modes::list_chip_modes_below(a, b, eps, *fmax));
    }
}

void modes_stub(Command &c, Report &r)
{
    const double eps = c.num("stub.eps_r");
    const auto len = c.opt("stub.length_m");
    const auto freq = c.opt("stub.freq_hz");
    detail::require(len.has_value() != freq.has_value(), "stub.length_m", "give exactly one of length or frequency");
    if (len) {
        r.results["freq_hz"] = modes::stub_mode_freq(*len, eps);
    } else {
        r.results["length_m"] = modes::stub_length_for_freq(*freq, eps);
    }
}

void modes_check(Command &c, Report &r)
{
    modes::PackageDescription d;
    d.max_qubit_freq_hz = c.opt("package.max_qubit_freq_hz");
    d.qubit_surface_distance_m = c.opt("package.qubit_surface_distance_m");
    d.connector_impedance_ohm = c.opt("package.connector_impedance_ohm");
    d.waveguide_impedance_ohm = c.opt("package.waveguide_impedance_ohm");
    d.via_pitch_m = c.opt("package.via_pitch_m");
    d.via_eps_r = c.opt("package.via_eps_r");
    d.via_f_max_hz = c.opt("package.via_f_max_hz");
    d.ground_bonds_between_signals = c.opt_integer("package.ground_bonds");
    d.package_fundamental_hz = c.opt("package.fundamental_hz");
    d.package_a_m = c.opt("package.a_m");
    d.package_b_m = c.opt("package.b_m");
    d.package_d_m = c.opt("package.d_m");
    d.chip_fundamental_hz = c.opt("chip.fundamental_hz");
    d.chip_a_m = c.opt("chip.a_m");
    d.chip_b_m = c.opt("chip.b_m");
    d.chip_eps_r = c.opt("chip.eps_r");
    const auto findings = modes::design_rule_check(d);
    Table t{{"rule", "status", "measured", "limit"}, {}};
    Json list = Json::array();
    int failed = 0;
    for (const auto &f : findings) {
        const Json measured = f.measured ? number(*f.measured) : Json(nullptr);
        const Json limit = f.limit ? number(*f.limit) : Json(nullptr);
        list.push_back({{"rule", f.rule},
                        {"status", modes::to_string(f.status)},
                        {"measured", measured},
                        {"limit", limit},
                        {"detail", f.detail}});
        t.rows.push_back({f.rule, modes::to_string(f.status), measured, limit});
        failed += f.status == modes::RuleStatus::fail ? 1 : 0;
    }
    r.results["findings"] = list;
    r.results["failed"] = failed;
    r.table = std::move(t);
}

} // namespace

void register_design_commands(CLI::App &app, CommandSet &set)
{
    {
        auto &c = set.add(&app, "t1-budget", "t1-budget", "Material-loss T1 limits from a materials CSV");
        c.text("--materials", "materials.file", "Materials CSV");
        c.number("--freq-ghz", "qubit.freq_hz", kGHz, "Qubit frequency (GHz)", 5e9);
        c.handler = t1_budget;
    }

    auto *line = app.add_subcommand("line", "Transmission-line, wirebond and via calculators");
    line->require_subcommand(1);
    line->fallthrough();
    {
        auto &c = set.add(line, "wirebond", "line wirebond", "Wirebond L, C, impedance and mismatch");
        c.number("--length-mm", "wirebond.length_m", kMm, "Bond length (mm)");
        c.number("--diameter-um", "wirebond.diameter_m", kUm, "Wire diameter (um)");
        c.number("--height-mm", "wirebond.height_m", kMm, "Height above ground (mm)");
        c.number("--l-nh", "wirebond.inductance_h", kNh, "Inductance override (nH)");
        c.number("--c-ff", "wirebond.capacitance_f", kFf, "Capacitance override (fF)");
        c.number("--count", "wirebond.count", 1.0, "Parallel bonds", 1.0);
        c.number("--k-mutual", "wirebond.k_mutual", 1.0, "Mutual coupling between parallel bonds",
                 line::kDefaultBondMutualCoupling);
        c.number("--z0", "line.z0_ohm", 1.0, "Reference impedance (ohm)", 50.0);
        c.handler = line_wirebond;
    }
    {
        auto &c = set.add(line, "mismatch", "line mismatch", "Reflection, VSWR and mismatch loss of a load");
        c.number("--z-ohm", "line.load_ohm", 1.0, "Load impedance (ohm)");
        c.number("--z0", "line.z0_ohm", 1.0, "Reference impedance (ohm)", 50.0);
        c.handler = line_mismatch;
    }
    {
        auto &c = set.add(line, "via", "line via", "Interposer via parasitics");
        c.number("--height-mm", "via.height_m", kMm, "Via height (mm)");
        c.number("--drill-mm", "via.drill_m", kMm, "Drill diameter (mm)");
        c.number("--antipad-mm", "via.antipad_m", kMm, "Antipad diameter (mm)");
        c.number("--pad-mm", "via.pad_m", kMm, "Pad diameter (mm)");
        c.number("--eps-r", "via.eps_r", 1.0, "Dielectric constant");
        c.handler = line_via;
    }
    {
        auto &c = set.add(line, "fence", "line fence", "Maximum via-fence pitch (lambda/20)");
        c.number("--f-max-ghz", "fence.f_max_hz", kGHz, "Highest frequency to shield (GHz)");
        c.number("--eps-r", "fence.eps_r", 1.0, "Dielectric constant");
        c.number("--pitch-mm", "fence.pitch_m", kMm, "Actual via pitch to check (mm)");
        c.handler = line_fence;
    }
    {
        auto &c = set.add(line, "ladder", "line ladder", "Ground-bond ladder crosstalk sweep");
        c.number("--sections", "ladder.sections", 1.0, "Number of sections", 2.0);
        c.number("--l-nh", "ladder.series_inductance_h", kNh, "Bond inductance per section (nH)");
        c.number("--c-ff", "ladder.shunt_capacitance_f", kFf, "Chip-to-package capacitance per section (fF)");
        c.number("--m-nh", "ladder.mutual_inductance_h", kNh, "Mutual inductance between sections (nH)", 0.0);
        c.number("--cm-ff", "ladder.mutual_capacitance_f", kFf, "Mutual capacitance between sections (fF)", 0.0);
        c.number("--n-ground", "ladder.n_ground", 1.0, "Parallel ground bonds per node", 1.0);
        c.number("--z0", "line.z0_ohm", 1.0, "Port impedance (ohm)", 50.0);
        declare_sweep(c, 1e9, 20e9, 401);
        c.handler = line_ladder;
    }

    auto *match = app.add_subcommand("match", "Wirebond compensation filter synthesis");
    match->require_subcommand(1);
    match->fallthrough();
    {
        auto &c = set.add(match, "synth", "match synth", "Synthesize a third-order low-pass match");
        declare_filter(c);
        c.number("--fc-start-ghz", "match.fc_sweep_start_hz", kGHz, "Cutoff sweep start (GHz)");
        c.number("--fc-stop-ghz", "match.fc_sweep_stop_hz", kGHz, "Cutoff sweep stop (GHz)");
        c.number("--fc-points", "match.fc_sweep_points", 1.0, "Cutoff sweep points", 50.0);
        c.handler = match_synth;
    }
    {
        auto &c = set.add(match, "response", "match response", "Insertion-loss sweep of the synthesized match");
        declare_filter(c);
        declare_sweep(c, 0.5e9, 20e9, 400);
        c.handler = match_response;
    }

    auto *modes = app.add_subcommand("modes", "Cavity, chip and stub mode calculators and rule check");
    modes->require_subcommand(1);
    modes->fallthrough();
    {
        auto &c = set.add(modes, "cavity", "modes cavity", "TE/TM modes of a rectangular cavity");
        c.number("--a-mm", "cavity.a_m", kMm, "Width a (mm)");
        c.number("--b-mm", "cavity.b_m", kMm, "Width b (mm)");
        c.number("--d-mm", "cavity.d_m", kMm, "Height d (mm)");
        c.number("--eps-r", "cavity.eps_r", 1.0, "Filling dielectric constant", 1.0);
        c.number("--f-max-ghz", "cavity.f_max_hz", kGHz, "List modes below (GHz)", 30e9);
        c.handler = modes_cavity;
    }
    {
        auto &c = set.add(modes, "chip", "modes chip", "TM110 mode of the chip substrate");
        c.number("--a-mm", "chip.a_m", kMm, "Chip width a (mm)");
        c.number("--b-mm", "chip.b_m", kMm, "Chip width b (mm)");
        c.number("--eps-r", "chip.eps_r", 1.0, "Substrate dielectric constant", modes::kSiliconEpsR);
        c.number("--f-max-ghz", "chip.f_max_hz", kGHz, "Also list chip modes below (GHz)");
        c.handler = modes_chip;
    }
    {
        auto &c = set.add(modes, "stub", "modes stub", "Open-stub mode frequency or length");
        c.number("--length-mm", "stub.length_m", kMm, "Stub length (mm)");
        c.number("--freq-ghz", "stub.freq_hz", kGHz, "Target frequency (GHz)");
        c.number("--eps-r", "stub.eps_r", 1.0, "Effective dielectric constant", 1.0);
        c.handler = modes_stub;
    }
    {
        auto &c = set.add(modes, "check", "modes check", "Package design-rule check");
        c.number("--max-qubit-ghz", "package.max_qubit_freq_hz", kGHz, "Highest qubit frequency (GHz)");
        c.number("--surface-distance-mm", "package.qubit_surface_distance_m", kMm, "Qubit to nearest surface (mm)");
        c.number("--connector-ohm", "package.connector_impedance_ohm", 1.0, "Connector impedance (ohm)");
        c.number("--waveguide-ohm", "package.waveguide_impedance_ohm", 1.0, "On-package line impedance (ohm)");
        c.number("--via-pitch-mm", "package.via_pitch_m", kMm, "Via fence pitch (mm)");
        c.number("--via-eps-r", "package.via_eps_r", 1.0, "Via fence dielectric constant");
        c.number("--via-f-max-ghz", "package.via_f_max_hz", kGHz, "Via fence frequency (GHz)");
        c.number("--ground-bonds", "package.ground_bonds", 1.0, "Ground bonds between signal bonds");
        c.number("--fundamental-ghz", "package.fundamental_hz", kGHz, "Package fundamental mode (GHz)");
        c.number("--package-a-mm", "package.a_m", kMm, "Package cavity a (mm)");
        c.number("--package-b-mm", "package.b_m", kMm, "Package cavity b (mm)");
        c.number("--package-d-mm", "package.d_m", kMm, "Package cavity d (mm)");
        c.number("--chip-fundamental-ghz", "chip.fundamental_hz", kGHz, "Chip fundamental mode (GHz)");
        c.number("--chip-a-mm", "chip.a_m", kMm, "Chip width a (mm)");
        c.number("--chip-b-mm", "chip.b_m", kMm, "Chip width b (mm)");
        c.number("--chip-eps-r", "chip.eps_r", 1.0, "Chip dielectric constant");
        c.handler = modes_check;
    }
}

} // namespace qpack::cli
