#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "fixtures.hpp"
#include "qpack/cli/app.hpp"
#include "qpack/cli/config.hpp"
#include "qpack/cli/report.hpp"
#include "qpack/errors.hpp"

using namespace qpack;
using namespace qpack::cli;

namespace {

struct Outcome
{
    int code = 0;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string> &args)
{
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

Json invoke_json(const testing::ScratchDir &dir, std::vector<std::string> args)
{
    const auto path = dir.file("report.json");
    args.push_back("--json");
    args.push_back(path);
    const auto r = invoke(args);
    REQUIRE_MESSAGE(r.code == 0, r.err);
    return Json::parse(testing::read_text(path));
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("help and usage errors")
    {
        CHECK(invoke({"--help"}).code == kExitOk);
        const auto unknown = invoke({"modes", "chip", "--bogus", "1"});
        CHECK(unknown.code == kExitDomain);
        CHECK(unknown.err.find("Usage") != std::string::npos);
        CHECK(invoke({"no-such-command"}).code == kExitDomain);
        CHECK(invoke({}).code == kExitDomain);
    }

    TEST_CASE("domain and I/O failures map to exit codes")
    {
        CHECK(invoke({"modes", "chip", "--a-mm", "-5", "--b-mm", "5"}).code == kExitDomain);
        CHECK(invoke({"purcell", "--modes", "/nonexistent/modes.csv", "--qubit-freq-ghz", "3"}).code == kExitIo);
        testing::ScratchDir dir("cli");
        testing::write_text(dir.file("bad.s2p"), "# GHz S RI\n1 0 0 0\n");
        CHECK(invoke({"survey", "parse", "--touchstone", dir.file("bad.s2p")}).code == kExitIo);
    }

    TEST_CASE("chip mode command")
    {
        testing::ScratchDir dir("cli");
        const auto j = invoke_json(dir, {"modes", "chip", "--a-mm", "5", "--b-mm", "5", "--eps-r", "11.68"});
        CHECK(j["command"] == "modes chip");
        CHECK(j["results"]["fundamental_hz"].get<double>() == doctest::Approx(12.41e9).epsilon(2e-3));
        CHECK(j["inputs"]["chip.a_m"].get<double>() == 0.005);
        CHECK(j["metadata"]["version"] == kReportVersion);
    }

    TEST_CASE("purcell command against the mode table")
    {
        testing::ScratchDir dir("cli");
        const auto j = invoke_json(dir, {"purcell", "--modes", testing::data_dir() + "/table2_modes.csv",
                                         "--qubit-freq-ghz", "2.9531"});
        CHECK(j["results"]["aggregate_from_listed_s"].get<double>() == doctest::Approx(384e-6).epsilon(2e-3));
        CHECK(j["results"]["modes"].size() == 4);
    }

    TEST_CASE("config file, flags and defaults")
    {
        testing::ScratchDir dir("cli");
        testing::write_text(dir.file("run.cfg"), "# chip\nchip.a_m = 0.01\nchip.b_m = 0.01\n");
        const auto from_file = invoke_json(dir, {"modes", "chip", "--config", dir.file("run.cfg")});
        CHECK(from_file["results"]["fundamental_hz"].get<double>() == doctest::Approx(6.20e9).epsilon(2e-3));
        CHECK(from_file["inputs"]["chip.eps_r"].get<double>() == doctest::Approx(11.68));

        const auto flag_wins =
            invoke_json(dir, {"modes", "chip", "--config", dir.file("run.cfg"), "--a-mm", "20", "--b-mm", "5"});
        CHECK(flag_wins["results"]["fundamental_hz"].get<double>() == doctest::Approx(9.04e9).epsilon(2e-3));

        testing::write_text(dir.file("typo.cfg"), "chip.a_mm = 5\n");
        const auto typo = invoke({"modes", "chip", "--config", dir.file("typo.cfg")});
        CHECK(typo.code == kExitDomain);
        CHECK(typo.err.find("chip.a_mm") != std::string::npos);

        testing::write_text(dir.file("dup.cfg"), "chip.a_m = 5\nchip.a_m = 6\n");
        CHECK(invoke({"modes", "chip", "--config", dir.file("dup.cfg")}).code == kExitIo);
        CHECK(invoke({"modes", "chip", "--config", dir.file("absent.cfg")}).code == kExitIo);
    }

    TEST_CASE("config parser")
    {
        std::istringstream in("a.b = 1  # note\n\n  c = two words\n");
        const auto cfg = RunConfig::parse(in);
        CHECK(cfg.get("a.b") == "1");
        CHECK(cfg.get("c") == "two words");
        CHECK_FALSE(cfg.get("d").has_value());
        CHECK_THROWS_AS(cfg.reject_unknown({"a.b"}), DomainError);
        CHECK_NOTHROW(cfg.reject_unknown({"a.b", "c"}));
        std::istringstream bad("no equals sign\n");
        CHECK_THROWS_AS(RunConfig::parse(bad), ParseError);
    }

    TEST_CASE("table outputs")
    {
        testing::ScratchDir dir("cli");
        const auto r = invoke({"match", "response", "--l-parasitic-nh", "1", "--fc-ghz", "10", "--csv",
                               dir.file("resp.csv"), "--svg", dir.file("resp.svg")});
        REQUIRE_MESSAGE(r.code == 0, r.err);
        const auto csv = testing::read_text(dir.file("resp.csv"));
        CHECK(csv.find("freq_hz") == 0);
        CHECK(testing::read_text(dir.file("resp.svg")).find("<polyline") != std::string::npos);
    }

    TEST_CASE("human output numbers appear in the JSON")
    {
        testing::ScratchDir dir("cli");
        const auto path = dir.file("w.json");
        const auto r = invoke({"line", "wirebond", "--length-mm", "1", "--diameter-um", "25", "--height-mm", "0.5",
                               "--json", path});
        REQUIRE(r.code == 0);
        const auto json = testing::read_text(path);
        std::istringstream lines(r.out);
        std::string line;
        while (std::getline(lines, line)) {
            const auto colon = line.find(": ");
            if (colon == std::string::npos) {
                continue;
            }
            const auto value = line.substr(colon + 2);
            char *end = nullptr;
            std::strtod(value.c_str(), &end);
            if (end && *end == '\0' && !value.empty()) {
                CHECK_MESSAGE(json.find(value) != std::string::npos, value);
            }
        }
    }

    TEST_CASE("identical runs give identical reports")
    {
        testing::ScratchDir dir("cli");
        auto strip = [](Json j) {
            j["metadata"].erase("timestamp");
            return j.dump();
        };
        const std::vector<std::string> args{"line", "ladder", "--sections", "3", "--l-nh", "1", "--c-ff", "100",
                                            "--cm-ff", "1000", "--points", "50", "--seed", "9"};
        const auto a = invoke_json(dir, args);
        const auto b = invoke_json(dir, args);
        CHECK(strip(a) == strip(b));
        CHECK(a["metadata"]["seed"] == 9);
    }
}
