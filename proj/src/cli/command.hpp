#pragma once

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpack/cli/config.hpp"
#include "qpack/cli/report.hpp"

namespace qpack::cli {

// One leaf subcommand. Every parameter has a flag in display units and a
// dotted config key in SI units; flags win over the config file, which wins
// over the default. Resolved values are echoed into the report inputs.
class Command
{
public:
    using Handler = std::function<void(Command &, Report &)>;

    Command(CLI::App *app, std::string name, std::set<std::string> &keys);

    void number(const std::string &flag, const std::string &key, double scale, const std::string &help,
                std::optional<double> fallback = std::nullopt);
    void text(const std::string &flag, const std::string &key, const std::string &help,
              std::optional<std::string> fallback = std::nullopt);
    void list(const std::string &flag, const std::string &key, const std::string &help);
    void toggle(const std::string &flag, const std::string &key, const std::string &help);

    void bind(const RunConfig &config, Report &report);

    std::optional<double> opt(const std::string &key);
    double num(const std::string &key);
    int integer(const std::string &key);
    std::optional<int> opt_integer(const std::string &key);
    std::optional<std::string> opt_text(const std::string &key);
    std::string str(const std::string &key);
    std::vector<std::string> items(const std::string &key);
    bool enabled(const std::string &key);

    CLI::App *app() const { return app_; }
    const std::string &name() const { return name_; }

    Handler handler;

private:
    enum class Kind
    {
        number,
        text,
        list,
        toggle,
    };

    struct Param
    {
        Kind kind = Kind::number;
        std::string flag;
        std::string key;
        double scale = 1.0;
        std::optional<double> default_number;
        std::optional<std::string> default_text;
        std::optional<std::string> raw;
        std::vector<std::string> raw_list;
        bool switched = false;
    };

    Param &param(const std::string &key, Kind kind);
    Param &declare(Kind kind, const std::string &flag, const std::string &key);

    CLI::App *app_;
    std::string name_;
    std::set<std::string> &keys_;
    std::deque<Param> params_;
    std::map<std::string, Param *> by_key_;
    const RunConfig *config_ = nullptr;
    Report *report_ = nullptr;
};

struct CommandSet
{
    std::vector<std::unique_ptr<Command>> commands;
    std::set<std::string> keys;

    Command &add(CLI::App *parent, const std::string &sub, const std::string &full_name, const std::string &help);
};

void register_design_commands(CLI::App &app, CommandSet &set);
void register_budget_commands(CLI::App &app, CommandSet &set);
void register_hidden_mode_commands(CLI::App &app, CommandSet &set);
void register_survey_commands(CLI::App &app, CommandSet &set);

// Helpers shared by the command files.
double parse_double(const std::string &text, const std::string &field);
Json lifetime_json(double seconds_or_zero_rate, bool unbounded);

} // namespace qpack::cli
