#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>

namespace qpack::cli {

// Flat dotted-key configuration: `key = value` lines, `#` starts a comment.
class RunConfig
{
public:
    static RunConfig parse(std::istream &in);
    static RunConfig load_file(const std::string &path);

    std::optional<std::string> get(const std::string &key) const;
    const std::map<std::string, std::string> &values() const { return values_; }

    /// Throws DomainError naming the first key not in known.
    void reject_unknown(const std::set<std::string> &known) const;

private:
    std::map<std::string, std::string> values_;
};

} // namespace qpack::cli
