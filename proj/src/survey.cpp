#include "qpack/survey.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "qpack/constants.hpp"
#include "qpack/csv.hpp"
#include "qpack/errors.hpp"

namespace qpack::survey {

namespace {

using detail::require;

enum class Format
{
    ri,
    ma,
    db,
};

struct Options
{
    double freq_scale = 1e9;
    Format format = Format::ma;
    double z0 = 50.0;
};

std::string upper(std::string_view s)
{
    std::string out(s);
    for (auto &c : out) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return out;
}

std::vector<std::string_view> split_ws(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) {
            ++j;
        }
        if (j > i) {
            out.push_back(line.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

std::optional<double> to_double(std::string_view tok)
{
    double v = 0.0;
    const char *first = tok.data();
    if (!tok.empty() && tok.front() == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

Options parse_options(const std::vector<std::string_view> &tokens, std::size_t line)
{
    Options o;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        const auto t = upper(tokens[i]);
        if (t == "HZ") {
            o.freq_scale = 1.0;
        } else if (t == "KHZ") {
            o.freq_scale = 1e3;
        } else if (t == "MHZ") {
            o.freq_scale = 1e6;
        } else if (t == "GHZ") {
            o.freq_scale = 1e9;
        } else if (t == "RI") {
            o.format = Format::ri;
        } else if (t == "MA") {
            o.format = Format::ma;
        } else if (t == "DB") {
            o.format = Format::db;
        } else if (t == "S") {
        } else if (t == "Y" || t == "Z" || t == "H" || t == "G") {
            throw ParseError("only S parameters are supported, found " + t, line);
        } else if (t == "R") {
            if (i + 1 >= tokens.size()) {
                throw ParseError("option line: R needs a reference impedance", line);
            }
            const auto z = to_double(tokens[++i]);
            if (!z || *z <= 0.0) {
                throw ParseError("option line: invalid reference impedance", line);
            }
            o.z0 = *z;
        } else {
            throw ParseError("option line: unknown token " + std::string(tokens[i]), line);
        }
    }
    return o;
}

std::complex<double> decode(double a, double b, Format f)
{
    switch (f) {
    case Format::ri:
        return {a, b};
    case Format::ma:
        return std::polar(a, b * kPi / 180.0);
    case Format::db:
        return std::polar(std::pow(10.0, a / 20.0), b * kPi / 180.0);
    }
    return {};
}

void store_record(ScatteringData &d, const std::vector<double> &rec, const Options &o)
{
    const std::size_t n = d.n_ports;
    d.freqs.push_back(rec[0] * o.freq_scale);
    const std::size_t base = d.values.size();
    d.values.resize(base + n * n);
    for (std::size_t p = 0; p < n * n; ++p) {
        std::size_t i = p / n;
        std::size_t j = p % n;
        if (n == 2) {
            // Two-port records list S11 S21 S12 S22.
            std::swap(i, j);
        }
        d.values[base + i * n + j] = decode(rec[1 + 2 * p], rec[2 + 2 * p], o.format);
    }
}

std::string fmt9(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

} // namespace

void validate(const ScatteringData &data)
{
    require(data.n_ports >= 1 && data.n_ports <= kMaxTouchstonePorts, "n_ports", "must be between 1 and 32");
    require(data.values.size() == data.freqs.size() * data.n_ports * data.n_ports, "values",
            "matrix count does not match frequency count");
    for (std::size_t k = 1; k < data.freqs.size(); ++k) {
        require(data.freqs[k] > data.freqs[k - 1], "freqs", "must be strictly increasing");
    }
}

ScatteringData parse_touchstone(std::string_view text, std::size_t n_ports)
{
    if (n_ports < 1 || n_ports > kMaxTouchstonePorts) {
        throw ParseError("port count must be between 1 and 32");
    }
    ScatteringData d;
    d.n_ports = n_ports;
    Options opt;
    bool have_options = false;
    const std::size_t record_len = 1 + 2 * n_ports * n_ports;
    std::vector<double> rec;
    std::size_t record_line = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (const auto bang = line.find('!'); bang != std::string_view::npos) {
            line = line.substr(0, bang);
        }
        const auto tokens = split_ws(line);
        if (tokens.empty()) {
            if (pos > text.size()) {
                break;
            }
            continue;
        }
        if (tokens[0].front() == '[') {
            throw ParseError("version-2 Touchstone keywords are not supported", line_no);
        }
        if (tokens[0].front() == '#') {
            if (!rec.empty()) {
                throw ParseError("option line inside a data record", line_no);
            }
            if (!have_options) {
                auto t = tokens;
                if (t[0].size() > 1) {
                    t.insert(t.begin() + 1, t[0].substr(1));
                }
                opt = parse_options(t, line_no);
                have_options = true;
            }
            continue;
        }
        if (rec.empty()) {
            record_line = line_no;
        }
        if (rec.empty() && n_ports == 2 && tokens.size() == 5 && !d.freqs.empty()) {
            // Noise parameters follow the S data with a restart in frequency.
            const auto f = to_double(tokens[0]);
            if (f && *f * opt.freq_scale <= d.freqs.back()) {
                throw ParseError("noise parameter data is not supported", line_no);
            }
        }
        if (rec.size() + tokens.size() > record_len) {
            throw ParseError("wrong token count: record needs " + std::to_string(record_len) + " numbers",
                             line_no);
        }
        for (auto tok : tokens) {
            const auto v = to_double(tok);
            if (!v) {
                throw ParseError("not a number: " + std::string(tok), line_no);
            }
            rec.push_back(*v);
        }
        if (rec.size() == record_len) {
            const double f = rec[0] * opt.freq_scale;
            if (!d.freqs.empty() && f <= d.freqs.back()) {
                throw ParseError("frequency not strictly increasing", record_line);
            }
            if (f < 0.0) {
                throw ParseError("negative frequency", record_line);
            }
            store_record(d, rec, opt);
            rec.clear();
        }
        if (pos > text.size()) {
            break;
        }
    }
    if (!rec.empty()) {
        throw ParseError("truncated record: wrong token count", record_line);
    }
    if (d.freqs.empty()) {
        throw ParseError("no data records");
    }
    d.z0 = opt.z0;
    return d;
}

std::size_t ports_from_extension(const std::string &path)
{
    const auto dot = path.find_last_of('.');
    const auto ext = dot == std::string::npos ? std::string{} : upper(path.substr(dot + 1));
    if (ext.size() < 3 || ext.front() != 'S' || ext.back() != 'P') {
        throw ParseError("cannot infer port count from extension of " + path);
    }
    std::size_t n = 0;
    const auto digits = std::string_view(ext).substr(1, ext.size() - 2);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || n < 1 || n > kMaxTouchstonePorts) {
        throw ParseError("unsupported Touchstone extension ." + ext);
    }
    return n;
}

ScatteringData read_touchstone_file(const std::string &path)
{
    const auto n = ports_from_extension(path);
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_touchstone(ss.str(), n);
}

void write_touchstone(std::ostream &out, const ScatteringData &data)
{
    validate(data);
    const std::size_t n = data.n_ports;
    out << "# Hz S RI R " << fmt9(data.z0) << '\n';
    for (std::size_t k = 0; k < data.freqs.size(); ++k) {
        out << format_number(data.freqs[k]);
        auto put = [&](std::size_t i, std::size_t j) {
            const auto v = data.at(k, i, j);
            out << ' ' << fmt9(v.real()) << ' ' << fmt9(v.imag());
        };
        if (n <= 2) {
            for (std::size_t p = 0; p < n * n; ++p) {
                // Two-port column order S11 S21 S12 S22.
                put(p % n, p / n);
            }
            out << '\n';
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (j > 0 && j % 4 == 0) {
                    out << '\n';
                }
                put(i, j);
            }
            out << '\n';
        }
    }
}

std::vector<std::pair<int, int>> cross_pairs_from_sides(const std::map<int, std::string> &sides)
{
    std::vector<std::pair<int, int>> pairs;
    for (const auto &[i, si] : sides) {
        for (const auto &[j, sj] : sides) {
            if (i != j && si != sj) {
                pairs.emplace_back(i, j);
            }
        }
    }
    return pairs;
}

PortMap read_port_map(std::istream &in)
{
    const auto table = CsvTable::read(in);
    table.require_columns({"port", "side"});
    PortMap m;
    for (std::size_t r = 0; r < table.rows(); ++r) {
        const double p = table.number(r, "port");
        if (p != std::floor(p) || p < 1.0) {
            throw ParseError("port must be a positive integer", table.line_of(r));
        }
        const auto port = static_cast<int>(p);
        if (!m.sides.emplace(port, table.cell(r, "side")).second) {
            throw ParseError("duplicate port " + std::to_string(port), table.line_of(r));
        }
    }
    m.cross_pairs = cross_pairs_from_sides(m.sides);
    return m;
}

PortMap read_port_map_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    return read_port_map(in);
}

void validate(const PortMap &map, std::size_t n_ports)
{
    for (const auto &[i, j] : map.cross_pairs) {
        require(i >= 1 && j >= 1 && static_cast<std::size_t>(i) <= n_ports && static_cast<std::size_t>(j) <= n_ports,
                "cross_pairs", "port out of range");
        require(i != j, "cross_pairs", "pair must join two different ports");
    }
}

Trace average_cross_traces(const ScatteringData &data, std::span<const std::pair<int, int>> pairs, Execution exec)
{
    validate(data);
    require(!pairs.empty(), "cross_pairs", "pair list is empty");
    PortMap check;
    check.cross_pairs.assign(pairs.begin(), pairs.end());
    validate(check, data.n_ports);
    auto sorted = check.cross_pairs;
    std::sort(sorted.begin(), sorted.end());

    Trace t;
    t.freqs = data.freqs;
    t.mag_db.resize(data.freqs.size());
    const double inv_count = 1.0 / static_cast<double>(sorted.size());
    for_each_index(data.freqs.size(), exec, [&](std::size_t k) {
        double sum = 0.0;
        for (const auto &[i, j] : sorted) {
            sum += std::abs(data.at(k, static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)));
        }
        const double mean = sum * inv_count;
        t.mag_db[k] = mean > 0.0 ? std::max(20.0 * std::log10(mean), kMagnitudeFloorDb) : kMagnitudeFloorDb;
    });
    return t;
}

std::vector<PeakRecord> find_peaks(const Trace &trace, double min_prominence_db, double min_spacing_hz)
{
    require(trace.freqs.size() == trace.mag_db.size(), "trace", "frequency and magnitude lengths differ");
    require(trace.freqs.size() >= 5, "trace", "at least 5 points are required");
    require(min_prominence_db > 0.0, "min_prominence_db", "must be positive");
    require(min_spacing_hz >= 0.0, "min_spacing_hz", "must be non-negative");
    const auto &f = trace.freqs;
    const auto &v = trace.mag_db;
    const std::size_t n = v.size();

    struct Candidate
    {
        std::size_t k;
        double prominence;
        double base;
    };
    std::vector<Candidate> cands;
    for (std::size_t k = 0; k < n; ++k) {
        if ((k > 0 && v[k - 1] >= v[k]) || (k + 1 < n && v[k + 1] > v[k])) {
            continue;
        }
        double left_min = v[k];
        std::size_t j = k;
        while (j > 0 && v[j - 1] <= v[k]) {
            left_min = std::min(left_min, v[--j]);
        }
        const bool left_open = j == 0;
        double right_min = v[k];
        j = k;
        while (j + 1 < n && v[j + 1] <= v[k]) {
            right_min = std::min(right_min, v[++j]);
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
        const double prom = v[k] - base;
        if (prom >= min_prominence_db) {
            cands.push_back({k, prom, base});
        }
    }
    std::stable_sort(cands.begin(), cands.end(), [&](const Candidate &a, const Candidate &b) { return v[a.k] > v[b.k]; });

    std::vector<PeakRecord> out;
    for (const auto &c : cands) {
        const bool crowded = std::any_of(out.begin(), out.end(), [&](const PeakRecord &p) {
            return std::abs(p.f0 - f[c.k]) < min_spacing_hz;
        });
        if (crowded) {
            continue;
        }
        // Half of the power excess over the local baseline, expressed in dB.
        const double p_peak = std::pow(10.0, v[c.k] / 10.0);
        const double p_base = std::pow(10.0, c.base / 10.0);
        const double level = 10.0 * std::log10(p_base + 0.5 * (p_peak - p_base));
        std::size_t l = c.k;
        while (l > 0 && v[l] > level) {
            --l;
        }
        std::size_t r = c.k;
        while (r + 1 < n && v[r] > level) {
            ++r;
        }
        PeakRecord p;
        p.f0 = f[c.k];
        p.prominence_db = c.prominence;
        p.f_lo = v[l] <= level && l < c.k ? f[l] + (level - v[l]) / (v[l + 1] - v[l]) * (f[l + 1] - f[l]) : f[l];
        p.f_hi = v[r] <= level && r > c.k ? f[r - 1] + (v[r - 1] - level) / (v[r - 1] - v[r]) * (f[r] - f[r - 1])
                                          : f[r];
        p.fwhm = p.f_hi - p.f_lo;
        if (p.fwhm <= 0.0) {
            continue;
        }
        out.push_back(p);
    }
    std::sort(out.begin(), out.end(), [](const PeakRecord &a, const PeakRecord &b) { return a.f0 < b.f0; });
    return out;
}

void write_trace_csv(std::ostream &out, const Trace &trace)
{
    out << "freq_hz,avg_mag_db\n";
    for (std::size_t k = 0; k < trace.freqs.size(); ++k) {
        out << format_number(trace.freqs[k]) << ',' << format_number(trace.mag_db[k]) << '\n';
    }
}

Trace read_trace_csv(std::istream &in)
{
    const auto table = CsvTable::read(in);
    table.require_columns({"freq_hz", "avg_mag_db"});
    Trace t;
    for (std::size_t r = 0; r < table.rows(); ++r) {
        t.freqs.push_back(table.number(r, "freq_hz"));
        t.mag_db.push_back(table.number(r, "avg_mag_db"));
        if (r > 0 && t.freqs[r] <= t.freqs[r - 1]) {
            throw ParseError("frequency not strictly increasing", table.line_of(r));
        }
    }
    return t;
}

void write_peaks_csv(std::ostream &out, std::span<const PeakRecord> peaks)
{
    out << "f0_hz,prominence_db,fwhm_hz\n";
    for (const auto &p : peaks) {
        out << format_number(p.f0) << ',' << format_number(p.prominence_db) << ',' << format_number(p.fwhm) << '\n';
    }
}

} // namespace qpack::survey
