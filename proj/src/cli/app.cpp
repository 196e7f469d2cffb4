#include "qpack/cli/app.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "command.hpp"
#include "qpack/errors.hpp"
#include "qpack/ramsey.hpp"

namespace qpack::cli {

namespace {

void write_file(const std::string &path, const std::string &field, const auto &writer)
{
    std::ofstream out(path);
    if (!out) {
        throw IoError(field + ": cannot write " + path);
    }
    writer(out);
    if (!out) {
        throw IoError(field + ": write failed for " + path);
    }
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"qpack: superconducting-qubit package design and diagnostics"};
    app.name("qpack");
    app.require_subcommand(1);

    std::optional<std::string> config_path, json_path, csv_path, svg_path, seed_text;
    app.add_option("--config", config_path, "Config file of key = value lines (default: $QPACK_CONFIG)");
    app.add_option("--json", json_path, "Write the JSON report here [output.json]");
    app.add_option("--csv", csv_path, "Write the report table as CSV [output.csv]");
    app.add_option("--svg", svg_path, "Write the report table as an SVG line plot [output.svg]");
    app.add_option("--seed", seed_text, "Random seed recorded in the report [seed]");

    CommandSet set;
    set.keys = {"output.json", "output.csv", "output.svg", "seed"};
    register_design_commands(app, set);
    register_budget_commands(app, set);
    register_hidden_mode_commands(app, set);
    register_survey_commands(app, set);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kExitDomain;
    }

    Command *cmd = nullptr;
    for (auto &c : set.commands) {
        if (c->app()->parsed()) {
            cmd = c.get();
        }
    }
    if (!cmd) {
        err << "error: no command given\n\n" << app.help();
        return kExitDomain;
    }

    try {
        RunConfig config;
        if (!config_path) {
            if (const char *env = std::getenv("QPACK_CONFIG"); env && *env) {
                config_path = env;
            }
        }
        if (config_path) {
            config = RunConfig::load_file(*config_path);
        }
        config.reject_unknown(set.keys);
        auto pick = [&](const std::optional<std::string> &flag, const char *key) {
            return flag ? flag : config.get(key);
        };
        json_path = pick(json_path, "output.json");
        csv_path = pick(csv_path, "output.csv");
        svg_path = pick(svg_path, "output.svg");
        seed_text = pick(seed_text, "seed");

        Report report;
        report.command = cmd->name();
        report.timestamp = utc_timestamp();
        if (seed_text) {
            const double s = parse_double(*seed_text, "seed");
            if (s < 0.0 || s != std::floor(s) || s > 9.007199254740992e15) {
                throw DomainError("seed", "must be a non-negative integer");
            }
            report.seed = static_cast<std::uint64_t>(s);
        }
        cmd->bind(config, report);
        cmd->handler(*cmd, report);

        const Json j = report.to_json();
        if (csv_path) {
            write_file(*csv_path, "output.csv", [&](std::ostream &o) { write_table_csv(report, o); });
        }
        if (svg_path) {
            write_file(*svg_path, "output.svg", [&](std::ostream &o) { write_table_svg(report, o); });
        }
        if (json_path) {
            write_file(*json_path, "output.json", [&](std::ostream &o) { o << j.dump(2) << '\n'; });
        }
        render_human(j, out);
        return kExitOk;
    } catch (const DomainError &e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const hidden::RamseyFitError &e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
}

} // namespace qpack::cli
