#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qpack {

// Minimal comma-separated table: one header row, no quoting. Blank cells are
// kept as empty strings so optional columns can be detected.
class CsvTable
{
public:
    static CsvTable read(std::istream &in);
    static CsvTable read_file(const std::string &path);

    const std::vector<std::string> &header() const { return header_; }
    std::size_t rows() const { return cells_.size(); }

    bool has_column(std::string_view name) const;
    void require_columns(std::initializer_list<std::string_view> names) const;

    const std::string &cell(std::size_t row, std::string_view column) const;
    double number(std::size_t row, std::string_view column) const;
    std::optional<double> optional_number(std::size_t row, std::string_view column) const;

    // Source line of a data row, for error messages.
    std::size_t line_of(std::size_t row) const { return lines_.at(row); }

private:
    std::size_t column_index(std::string_view name) const;

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> cells_;
    std::vector<std::size_t> lines_;
};

// Shortest text that round-trips the double.
std::string format_number(double v);

} // namespace qpack
