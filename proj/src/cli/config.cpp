#include "qpack/cli/config.hpp"

#include <fstream>
#include <istream>

#include "qpack/errors.hpp"

namespace qpack::cli {

namespace {

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

RunConfig RunConfig::parse(std::istream &in)
{
    RunConfig cfg;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (const auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        const auto text = trim(raw);
        if (text.empty()) {
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ParseError("expected key = value", line);
        }
        const auto key = trim(text.substr(0, eq));
        const auto value = trim(text.substr(eq + 1));
        if (key.empty()) {
            throw ParseError("empty key", line);
        }
        if (!cfg.values_.emplace(key, value).second) {
            throw ParseError("duplicate key " + key, line);
        }
    }
    return cfg;
}

RunConfig RunConfig::load_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config " + path);
    }
    try {
        return parse(in);
    } catch (const ParseError &e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::optional<std::string> RunConfig::get(const std::string &key) const
{
    const auto it = values_.find(key);
    if (it == values_.end()) {
        return std::nullopt;
    }
    return it->second;
}

void RunConfig::reject_unknown(const std::set<std::string> &known) const
{
    for (const auto &[key, value] : values_) {
        if (!known.contains(key)) {
            throw DomainError(key, "unknown configuration key");
        }
    }
}

} // namespace qpack::cli
