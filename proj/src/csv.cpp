#include "qpack/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "qpack/errors.hpp"

namespace qpack {

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string &line)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(std::string_view(line).substr(start, comma - start)));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

} // namespace

CsvTable CsvTable::read(std::istream &in)
{
    CsvTable t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto content = trim(line);
        if (content.empty() || content.front() == '#') {
            continue;
        }
        auto fields = split(content);
        if (t.header_.empty()) {
            t.header_ = std::move(fields);
            continue;
        }
        if (fields.size() != t.header_.size()) {
            throw ParseError("expected " + std::to_string(t.header_.size()) + " fields, found " +
                                 std::to_string(fields.size()),
                             lineno);
        }
        t.cells_.push_back(std::move(fields));
        t.lines_.push_back(lineno);
    }
    if (t.header_.empty()) {
        throw ParseError("missing CSV header");
    }
    return t;
}

CsvTable CsvTable::read_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    try {
        return read(in);
    } catch (const ParseError &e) {
        throw ParseError(path + ": " + e.what());
    }
}

bool CsvTable::has_column(std::string_view name) const
{
    return std::find(header_.begin(), header_.end(), name) != header_.end();
}

void CsvTable::require_columns(std::initializer_list<std::string_view> names) const
{
    for (auto n : names) {
        if (!has_column(n)) {
            throw ParseError("missing column '" + std::string(n) + "'", 1);
        }
    }
}

std::size_t CsvTable::column_index(std::string_view name) const
{
    const auto it = std::find(header_.begin(), header_.end(), name);
    if (it == header_.end()) {
        throw ParseError("missing column '" + std::string(name) + "'");
    }
    return static_cast<std::size_t>(it - header_.begin());
}

const std::string &CsvTable::cell(std::size_t row, std::string_view column) const
{
    return cells_.at(row).at(column_index(column));
}

double CsvTable::number(std::size_t row, std::string_view column) const
{
    auto v = optional_number(row, column);
    if (!v) {
        throw ParseError("empty value in column '" + std::string(column) + "'", line_of(row));
    }
    return *v;
}

std::optional<double> CsvTable::optional_number(std::size_t row, std::string_view column) const
{
    const auto &text = cell(row, column);
    if (text.empty()) {
        return std::nullopt;
    }
    double v = 0.0;
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end) {
        throw ParseError("not a number in column '" + std::string(column) + "': " + text, line_of(row));
    }
    return v;
}

std::string format_number(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

} // namespace qpack
