#include "qpack/cli/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <ostream>

#include "qpack/csv.hpp"
#include "qpack/errors.hpp"

namespace qpack::cli {

namespace {

constexpr std::size_t kHumanRowLimit = 20;

std::string scalar_text(const Json &v)
{
    if (v.is_string()) {
        return v.get<std::string>();
    }
    return v.dump();
}

void render_value(const Json &v, const std::string &name, int indent, std::ostream &out)
{
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    if (v.is_object()) {
        if (!name.empty()) {
            out << pad << name << ":\n";
        }
        for (const auto &[k, child] : v.items()) {
            render_value(child, k, name.empty() ? indent : indent + 1, out);
        }
        return;
    }
    if (v.is_array()) {
        const bool flat = std::all_of(v.begin(), v.end(), [](const Json &e) { return e.is_primitive(); });
        if (flat) {
            out << pad << name << ": [";
            for (std::size_t i = 0; i < v.size(); ++i) {
                out << (i ? ", " : "") << scalar_text(v[i]);
            }
            out << "]\n";
            return;
        }
        out << pad << name << ":\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            render_value(v[i], "[" + std::to_string(i) + "]", indent + 1, out);
        }
        return;
    }
    out << pad << name << ": " << scalar_text(v) << '\n';
}

std::string csv_cell(const Json &v)
{
    if (v.is_null()) {
        return {};
    }
    if (v.is_number()) {
        return format_number(v.get<double>());
    }
    if (v.is_boolean()) {
        return v.get<bool>() ? "true" : "false";
    }
    return scalar_text(v);
}

const Table &require_table(const Report &report, const char *what)
{
    if (!report.table || report.table->columns.empty()) {
        throw DomainError(what, "command '" + report.command + "' produces no sweep or table");
    }
    return *report.table;
}

} // namespace

Json number(double v)
{
    return std::isfinite(v) ? Json(v) : Json(nullptr);
}

std::string utc_timestamp()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

Json Report::to_json() const
{
    Json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["results"] = results;
    j["warnings"] = warnings;
    Json meta = extra_metadata;
    meta["version"] = kReportVersion;
    meta["seed"] = seed;
    meta["timestamp"] = timestamp;
    j["metadata"] = meta;
    if (table) {
        j["table"] = {{"columns", table->columns}, {"rows", table->rows}};
    }
    return j;
}

void render_human(const Json &report, std::ostream &out)
{
    out << "qpack " << scalar_text(report.at("command")) << '\n';
    if (!report.at("inputs").empty()) {
        render_value(report.at("inputs"), "inputs", 0, out);
    }
    render_value(report.at("results"), "results", 0, out);
    for (const auto &w : report.at("warnings")) {
        out << "warning: " << scalar_text(w) << '\n';
    }
    if (report.contains("table")) {
        const auto &t = report.at("table");
        const auto &cols = t.at("columns");
        const auto &rows = t.at("rows");
        out << "table (" << rows.size() << " rows):\n  ";
        for (std::size_t i = 0; i < cols.size(); ++i) {
            out << (i ? "  " : "") << scalar_text(cols[i]);
        }
        out << '\n';
        const std::size_t shown = std::min(rows.size(), kHumanRowLimit);
        for (std::size_t r = 0; r < shown; ++r) {
            out << "  ";
            for (std::size_t i = 0; i < rows[r].size(); ++i) {
                out << (i ? "  " : "") << scalar_text(rows[r][i]);
            }
            out << '\n';
        }
        if (shown < rows.size()) {
            out << "  ... " << rows.size() - shown << " more rows in the JSON/CSV output\n";
        }
    }
}

void write_table_csv(const Report &report, std::ostream &out)
{
    const auto &t = require_table(report, "csv");
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        out << (i ? "," : "") << t.columns[i];
    }
    out << '\n';
    for (const auto &row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << csv_cell(row[i]);
        }
        out << '\n';
    }
}

void write_table_svg(const Report &report, std::ostream &out)
{
    const auto &t = require_table(report, "svg");
    std::size_t ycol = 1;
    while (ycol < t.columns.size() &&
           std::none_of(t.rows.begin(), t.rows.end(), [&](const auto &r) { return r[ycol].is_number(); })) {
        ++ycol;
    }
    if (t.columns.size() < 2 || ycol >= t.columns.size()) {
        throw DomainError("svg", "table has no numeric series to plot");
    }
    std::vector<std::pair<double, double>> pts;
    for (const auto &r : t.rows) {
        if (r[0].is_number() && r[ycol].is_number()) {
            pts.emplace_back(r[0].get<double>(), r[ycol].get<double>());
        }
    }
    if (pts.empty()) {
        throw DomainError("svg", "table has no numeric series to plot");
    }
    double x0 = pts.front().first, x1 = x0, y0 = pts.front().second, y1 = y0;
    for (const auto &[x, y] : pts) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    }
    if (x1 == x0) {
        x1 = x0 + 1.0;
    }
    if (y1 == y0) {
        y1 = y0 + 1.0;
    }
    constexpr double w = 640.0, h = 400.0, m = 50.0;
    auto sx = [&](double x) { return m + (x - x0) / (x1 - x0) * (w - 2 * m); };
    auto sy = [&](double y) { return h - m - (y - y0) / (y1 - y0) * (h - 2 * m); };
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" viewBox=\"0 0 640 400\">\n";
    out << "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
    out << "<line x1=\"50\" y1=\"350\" x2=\"590\" y2=\"350\" stroke=\"black\"/>\n";
    out << "<line x1=\"50\" y1=\"50\" x2=\"50\" y2=\"350\" stroke=\"black\"/>\n";
    out << "<text x=\"320\" y=\"385\" text-anchor=\"middle\" font-size=\"12\">" << t.columns[0] << "</text>\n";
    out << "<text x=\"15\" y=\"200\" font-size=\"12\" transform=\"rotate(-90 15 200)\" text-anchor=\"middle\">"
        << t.columns[ycol] << "</text>\n";
    out << "<text x=\"50\" y=\"365\" font-size=\"10\">" << format_number(x0) << "</text>\n";
    out << "<text x=\"590\" y=\"365\" font-size=\"10\" text-anchor=\"end\">" << format_number(x1) << "</text>\n";
    out << "<text x=\"55\" y=\"348\" font-size=\"10\">" << format_number(y0) << "</text>\n";
    out << "<text x=\"55\" y=\"60\" font-size=\"10\">" << format_number(y1) << "</text>\n";
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "", sx(pts[i].first), sy(pts[i].second));
        out << buf;
    }
    out << "\"/>\n</svg>\n";
}

} // namespace qpack::cli
