#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qpack::cli {

using Json = nlohmann::json;

inline constexpr const char *kReportVersion = "1.0.0";

// Tabular payload of a report: a sweep or a row listing.
struct Table
{
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
};

struct Report
{
    std::string command;
    Json inputs = Json::object();
    Json results = Json::object();
    std::vector<std::string> warnings;
    std::uint64_t seed = 0;
    std::string timestamp;
    Json extra_metadata = Json::object();
    std::optional<Table> table;

    Json to_json() const;
};

/// JSON number, or null for non-finite values.
Json number(double v);

/// UTC time in ISO 8601.
std::string utc_timestamp();

/// Human-readable rendering built only from the JSON form.
void render_human(const Json &report, std::ostream &out);

/// CSV of the report table. Throws DomainError when there is none.
void write_table_csv(const Report &report, std::ostream &out);

/// Polyline of the second table column against the first.
void write_table_svg(const Report &report, std::ostream &out);

} // namespace qpack::cli
