#include "command.hpp"

#include <charconv>
#include <cmath>

#include "qpack/errors.hpp"

namespace qpack::cli {

double parse_double(const std::string &text, const std::string &field)
{
    double v = 0.0;
    const char *first = text.data();
    const char *last = text.data() + text.size();
    if (first != last && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
        throw DomainError(field, "not a finite number: '" + text + "'");
    }
    return v;
}

Json lifetime_json(double seconds, bool unbounded)
{
    return unbounded ? Json("unbounded") : number(seconds);
}

Command::Command(CLI::App *app, std::string name, std::set<std::string> &keys)
    : app_(app), name_(std::move(name)), keys_(keys)
{
}

Command::Param &Command::declare(Kind kind, const std::string &flag, const std::string &key)
{
    auto &p = params_.emplace_back();
    p.kind = kind;
    p.flag = flag;
    p.key = key;
    by_key_[key] = &p;
    keys_.insert(key);
    return p;
}

void Command::number(const std::string &flag, const std::string &key, double scale, const std::string &help,
                     std::optional<double> fallback)
{
    auto &p = declare(Kind::number, flag, key);
    p.scale = scale;
    p.default_number = fallback;
    app_->add_option(flag, p.raw, help + " [" + key + "]");
}

void Command::text(const std::string &flag, const std::string &key, const std::string &help,
                   std::optional<std::string> fallback)
{
    auto &p = declare(Kind::text, flag, key);
    p.default_text = std::move(fallback);
    app_->add_option(flag, p.raw, help + " [" + key + "]");
}

void Command::list(const std::string &flag, const std::string &key, const std::string &help)
{
    auto &p = declare(Kind::list, flag, key);
    app_->add_option(flag, p.raw_list, help + " [" + key + ", comma separated]");
}

void Command::toggle(const std::string &flag, const std::string &key, const std::string &help)
{
    auto &p = declare(Kind::toggle, flag, key);
    app_->add_flag(flag, p.switched, help + " [" + key + "]");
}

void Command::bind(const RunConfig &config, Report &report)
{
    config_ = &config;
    report_ = &report;
}

Command::Param &Command::param(const std::string &key, Kind kind)
{
    const auto it = by_key_.find(key);
    if (it == by_key_.end() || it->second->kind != kind) {
        throw std::logic_error("parameter " + key + " not declared for " + name_);
    }
    return *it->second;
}

std::optional<double> Command::opt(const std::string &key)
{
    auto &p = param(key, Kind::number);
    std::optional<double> v;
    if (p.raw) {
        // Dividing by an exact power of ten rounds once; multiplying by 1e-6 would not.
        const double x = parse_double(*p.raw, key);
        v = p.scale < 1.0 ? x / std::round(1.0 / p.scale) : x * p.scale;
    } else if (auto c = config_->get(key)) {
        v = parse_double(*c, key);
    } else {
        v = p.default_number;
    }
    if (v) {
        report_->inputs[key] = *v;
    }
    return v;
}

double Command::num(const std::string &key)
{
    const auto v = opt(key);
    if (!v) {
        throw DomainError(key, "required (flag " + param(key, Kind::number).flag + ")");
    }
    return *v;
}

std::optional<int> Command::opt_integer(const std::string &key)
{
    const auto v = opt(key);
    if (!v) {
        return std::nullopt;
    }
    if (*v != std::floor(*v) || std::abs(*v) > 1e9) {
        throw DomainError(key, "must be an integer");
    }
    return static_cast<int>(*v);
}

int Command::integer(const std::string &key)
{
    const auto v = opt_integer(key);
    if (!v) {
        throw DomainError(key, "required (flag " + param(key, Kind::number).flag + ")");
    }
    return *v;
}

std::optional<std::string> Command::opt_text(const std::string &key)
{
    auto &p = param(key, Kind::text);
    std::optional<std::string> v = p.raw ? p.raw : config_->get(key);
    if (!v) {
        v = p.default_text;
    }
    if (v) {
        report_->inputs[key] = *v;
    }
    return v;
}

std::string Command::str(const std::string &key)
{
    const auto v = opt_text(key);
    if (!v) {
        throw DomainError(key, "required (flag " + param(key, Kind::text).flag + ")");
    }
    return *v;
}

std::vector<std::string> Command::items(const std::string &key)
{
    auto &p = param(key, Kind::list);
    std::vector<std::string> out = p.raw_list;
    if (out.empty()) {
        if (auto c = config_->get(key)) {
            std::size_t start = 0;
            while (start <= c->size()) {
                const auto comma = c->find(',', start);
                const auto end = comma == std::string::npos ? c->size() : comma;
                auto item = c->substr(start, end - start);
                item.erase(0, item.find_first_not_of(' '));
                item.erase(item.find_last_not_of(' ') + 1);
                if (!item.empty()) {
                    out.push_back(item);
                }
                start = end + 1;
            }
        }
    }
    if (!out.empty()) {
        report_->inputs[key] = out;
    }
    return out;
}

bool Command::enabled(const std::string &key)
{
    auto &p = param(key, Kind::toggle);
    bool v = p.switched;
    if (!v) {
        if (auto c = config_->get(key)) {
            if (*c == "true" || *c == "1") {
                v = true;
            } else if (*c != "false" && *c != "0") {
                throw DomainError(key, "expected true or false");
            }
        }
    }
    report_->inputs[key] = v;
    return v;
}

Command &CommandSet::add(CLI::App *parent, const std::string &sub, const std::string &full_name,
                         const std::string &help)
{
    auto *app = parent->add_subcommand(sub, help);
    app->fallthrough();
    commands.push_back(std::make_unique<Command>(app, full_name, keys));
    return *commands.back();
}

} // namespace qpack::cli
