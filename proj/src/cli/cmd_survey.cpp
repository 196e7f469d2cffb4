#include <cmath>
#include <fstream>

#include "command.hpp"
#include "qpack/errors.hpp"
#include "qpack/survey.hpp"

namespace qpack::cli {

namespace {

constexpr double kMHz = 1e6;

Table trace_table(const survey::Trace &t)
{
    Table table{{"freq_hz", "avg_mag_db"}, {}};
    for (std::size_t k = 0; k < t.freqs.size(); ++k) {
        table.rows.push_back({t.freqs[k], t.mag_db[k]});
    }
    return table;
}

survey::Trace averaged(Command &c, Report &r)
{
    const auto data = survey::read_touchstone_file(c.str("survey.touchstone"));
    const auto map = survey::read_port_map_file(c.str("survey.port_map"));
    survey::validate(map, data.n_ports);
    r.results["n_ports"] = data.n_ports;
    r.results["pairs"] = map.cross_pairs.size();
    return survey::average_cross_traces(data, map.cross_pairs);
}

void survey_parse(Command &c, Report &r)
{
    const auto data = survey::read_touchstone_file(c.str("survey.touchstone"));
    r.results["n_ports"] = data.n_ports;
    r.results["points"] = data.freqs.size();
    r.results["f_start_hz"] = data.freqs.front();
    r.results["f_stop_hz"] = data.freqs.back();
    r.results["z0_ohm"] = data.z0;
    const int i = c.integer("survey.pair_to");
    const int j = c.integer("survey.pair_from");
    detail::require(i >= 1 && static_cast<std::size_t>(i) <= data.n_ports, "survey.pair_to", "port out of range");
    detail::require(j >= 1 && static_cast<std::size_t>(j) <= data.n_ports, "survey.pair_from", "port out of range");
    Table t{{"freq_hz", "s" + std::to_string(i) + "_" + std::to_string(j) + "_db"}, {}};
    for (std::size_t k = 0; k < data.freqs.size(); ++k) {
        const double mag = std::abs(data.at(k, static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)));
        t.rows.push_back({data.freqs[k], mag > 0.0 ? Json(20.0 * std::log10(mag)) : Json(survey::kMagnitudeFloorDb)});
    }
    r.table = std::move(t);
    if (const auto out_path = c.opt_text("survey.out")) {
        std::ofstream out(*out_path);
        if (!out) {
            throw IoError("cannot write " + *out_path);
        }
        survey::write_touchstone(out, data);
    }
}

void survey_average(Command &c, Report &r)
{
    const auto trace = averaged(c, r);
    r.results["points"] = trace.freqs.size();
    r.table = trace_table(trace);
}

void survey_peaks(Command &c, Report &r)
{
    survey::Trace trace;
    if (const auto path = c.opt_text("survey.trace")) {
        std::ifstream in(*path);
        if (!in) {
            throw IoError("cannot open " + *path);
        }
        trace = survey::read_trace_csv(in);
    } else {
        trace = averaged(c, r);
    }
    const auto peaks = survey::find_peaks(trace, c.num("survey.min_prominence_db"), c.num("survey.min_spacing_hz"));
    Json list = Json::array();
    Table t{{"f0_hz", "prominence_db", "fwhm_hz"}, {}};
    for (const auto &p : peaks) {
        list.push_back({{"f0_hz", p.f0}, {"prominence_db", p.prominence_db}, {"fwhm_hz", p.fwhm}});
        t.rows.push_back({p.f0, p.prominence_db, p.fwhm});
    }
    r.results["peaks"] = list;
    r.table = std::move(t);
}

} // namespace

void register_survey_commands(CLI::App &app, CommandSet &set)
{
    auto *sv = app.add_subcommand("survey", "Touchstone mode-survey tools");
    sv->require_subcommand(1);
    sv->fallthrough();
    {
        auto &c = set.add(sv, "parse", "survey parse", "Parse a Touchstone file and tabulate one S parameter");
        c.text("--touchstone", "survey.touchstone", "Touchstone .sNp file");
        c.number("--to", "survey.pair_to", 1.0, "Receiving port i of S_ij", 2.0);
        c.number("--from", "survey.pair_from", 1.0, "Driven port j of S_ij", 1.0);
        c.text("--out", "survey.out", "Rewrite the data as RI Touchstone");
        c.handler = survey_parse;
    }
    {
        auto &c = set.add(sv, "average", "survey average", "Average cross-cavity transmission traces");
        c.text("--touchstone", "survey.touchstone", "Touchstone .sNp file");
        c.text("--ports", "survey.port_map", "Port map CSV port,side");
        c.handler = survey_average;
    }
    {
        auto &c = set.add(sv, "peaks", "survey peaks", "Find resonance peaks in an averaged trace");
        c.text("--trace", "survey.trace", "Trace CSV freq_hz,avg_mag_db");
        c.text("--touchstone", "survey.touchstone", "Touchstone .sNp file, averaged first");
        c.text("--ports", "survey.port_map", "Port map CSV port,side");
        c.number("--min-prominence-db", "survey.min_prominence_db", 1.0, "Minimum peak prominence (dB)",
                 survey::kDefaultMinProminenceDb);
        c.number("--min-spacing-mhz", "survey.min_spacing_hz", kMHz, "Minimum peak spacing (MHz)",
                 survey::kDefaultMinSpacingHz);
        c.handler = survey_peaks;
    }
}

} // namespace qpack::cli
