#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "qpack/constants.hpp"
#include "qpack/errors.hpp"
#include "qpack/survey.hpp"

using namespace qpack;
using namespace qpack::survey;
using C = std::complex<double>;

namespace {

ScatteringData random_network(std::size_t n, std::size_t points, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.0, 0.3);
    ScatteringData d;
    d.n_ports = n;
    for (std::size_t k = 0; k < points; ++k) {
        d.freqs.push_back(1e9 + 1.37e6 * static_cast<double>(k));
        for (std::size_t p = 0; p < n * n; ++p) {
            d.values.emplace_back(z(rng), z(rng));
        }
    }
    return d;
}

Trace lorentzian_trace(const std::vector<double> &f0s, const std::vector<double> &heights_db, double fwhm,
                       double floor_db = -60.0)
{
    Trace t;
    for (int k = 0; k <= 2000; ++k) {
        const double f = 2e9 + 9e6 * k;
        double lin = std::pow(10.0, floor_db / 10.0);
        for (std::size_t r = 0; r < f0s.size(); ++r) {
            const double u = 2.0 * (f - f0s[r]) / fwhm;
            lin += std::pow(10.0, heights_db[r] / 10.0) / (1.0 + u * u);
        }
        t.freqs.push_back(f);
        t.mag_db.push_back(10.0 * std::log10(lin));
    }
    return t;
}

} // namespace

TEST_SUITE("survey")
{
    TEST_CASE("minimal two-port RI file")
    {
        const char *text = "! two port\n# GHz S RI R 50\n1.5 0.1 0.2 0.3 0.4 0.5 0.6 0.7 0.8\n";
        const auto d = parse_touchstone(text, 2);
        REQUIRE(d.freqs.size() == 1);
        CHECK(d.freqs[0] == 1.5e9);
        CHECK(d.at(0, 0, 0) == C(0.1, 0.2));
        CHECK(d.at(0, 1, 0) == C(0.3, 0.4));
        CHECK(d.at(0, 0, 1) == C(0.5, 0.6));
        CHECK(d.at(0, 1, 1) == C(0.7, 0.8));
        CHECK(d.z0 == 50.0);
    }

    TEST_CASE("formats and units")
    {
        const auto db = parse_touchstone("# MHz S DB R 75\n100 -20 90\n", 1);
        CHECK(std::abs(db.at(0, 0, 0) - C(0.0, 0.1)) < 1e-15);
        CHECK(db.freqs[0] == 100e6);
        CHECK(db.z0 == 75.0);
        const auto ma = parse_touchstone("# hz s ma\n5 0.5 180\n", 1);
        CHECK(std::abs(ma.at(0, 0, 0) - C(-0.5, 0.0)) < 1e-15);
        // Defaults: GHz, MA, 50 ohm.
        const auto def = parse_touchstone("2 1 0\n", 1);
        CHECK(def.freqs[0] == 2e9);
        CHECK(def.at(0, 0, 0) == C(1.0, 0.0));
    }

    TEST_CASE("multi-line records of a 3-port file are row major")
    {
        std::string text = "# Hz S RI\n1e9";
        for (int p = 0; p < 9; ++p) {
            text += " " + std::to_string(p) + " 0";
            if (p % 3 == 2) {
                text += "\n";
            }
        }
        const auto d = parse_touchstone(text, 3);
        CHECK(d.at(0, 0, 1).real() == 1.0);
        CHECK(d.at(0, 1, 0).real() == 3.0);
        CHECK(d.at(0, 2, 2).real() == 8.0);
    }

    TEST_CASE("malformed files report the line")
    {
        auto line_of = [](const std::string &text, std::size_t n) -> std::size_t {
            try {
                parse_touchstone(text, n);
            } catch (const ParseError &e) {
                return e.line();
            }
            return 0;
        };
        CHECK(line_of("# GHz S RI\n1 0 0\n1 0 0\n", 1) == 3);
        CHECK(line_of("# GHz S RI\n1 0 0 5\n", 1) == 2);
        CHECK(line_of("# GHz X RI\n1 0 0\n", 1) == 1);
        CHECK(line_of("# GHz Z RI\n1 0 0\n", 1) == 1);
        CHECK(line_of("[Version] 2.0\n", 1) == 1);
        CHECK(line_of("# GHz S RI\n1 0 abc\n", 1) == 2);
        const char *noise = "# GHz S MA\n1 0 0 0 0 0 0 0 0\n2 0 0 0 0 0 0 0 0\n1 2 0.5 30 0.3\n";
        CHECK(line_of(noise, 2) == 4);
        CHECK_THROWS_AS(parse_touchstone("# GHz S RI\n", 1), ParseError);
        CHECK_THROWS_AS(parse_touchstone("1 0 0\n", 33), ParseError);
    }

    TEST_CASE("write then parse is the identity")
    {
        for (std::size_t n : {1u, 2u, 3u, 5u}) {
            auto d = random_network(n, 17, n);
            std::ostringstream out;
            write_touchstone(out, d);
            const auto back = parse_touchstone(out.str(), n);
            CHECK(back.freqs == d.freqs);
            for (std::size_t i = 0; i < d.values.size(); ++i) {
                CHECK(std::abs(back.values[i] - d.values[i]) <= 1e-8 * std::abs(d.values[i]));
            }
            // A second pass is bit stable.
            std::ostringstream again;
            write_touchstone(again, back);
            CHECK(again.str() == out.str());
        }
    }

    TEST_CASE("port count from the extension")
    {
        CHECK(ports_from_extension("a/b/survey.s20p") == 20);
        CHECK(ports_from_extension("x.S2P") == 2);
        CHECK_THROWS(ports_from_extension("x.csv"));
    }

    TEST_CASE("port map and cross pairs")
    {
        std::istringstream in("port,side\n1,top\n2,top\n3,bottom\n");
        const auto map = read_port_map(in);
        CHECK(map.cross_pairs.size() == 4);
        for (auto [i, j] : map.cross_pairs) {
            CHECK(map.sides.at(i) != map.sides.at(j));
        }
        CHECK_NOTHROW(validate(map, 3));
        CHECK_THROWS_AS(validate(map, 2), DomainError);
        CHECK(cross_pairs_from_sides(testing::survey_sides()).size() == 200);
    }

    TEST_CASE("identical traces average to themselves")
    {
        auto d = random_network(3, 50, 1);
        for (std::size_t k = 0; k < 50; ++k) {
            d.values[(k * 3 + 0) * 3 + 2] = d.values[(k * 3 + 1) * 3 + 2];
        }
        const std::vector<std::pair<int, int>> pairs{{1, 3}, {2, 3}};
        const std::vector<std::pair<int, int>> single{{2, 3}};
        const auto a = average_cross_traces(d, pairs);
        const auto b = average_cross_traces(d, single);
        for (std::size_t k = 0; k < 50; ++k) {
            CHECK(a.mag_db[k] == doctest::Approx(b.mag_db[k]).epsilon(1e-12));
        }
        CHECK_THROWS_AS(average_cross_traces(d, {}), DomainError);
        const std::vector<std::pair<int, int>> bad{{1, 4}};
        CHECK_THROWS_AS(average_cross_traces(d, bad), DomainError);
    }

    TEST_CASE("averaging ignores pair order and execution mode")
    {
        const auto d = random_network(6, 300, 9);
        auto pairs = cross_pairs_from_sides({{1, "a"}, {2, "a"}, {3, "a"}, {4, "b"}, {5, "b"}, {6, "b"}});
        const auto ref = average_cross_traces(d, pairs, Execution::serial);
        std::mt19937_64 rng(2);
        for (int k = 0; k < 5; ++k) {
            std::shuffle(pairs.begin(), pairs.end(), rng);
            const auto t = average_cross_traces(d, pairs, Execution::parallel);
            CHECK(t.mag_db == ref.mag_db);
        }
    }

    TEST_CASE("averaging N independent pairs shrinks the floor spread by sqrt N")
    {
        constexpr std::size_t n_ports = 8;
        const auto d = random_network(n_ports, 4000, 21);
        std::vector<std::pair<int, int>> pairs;
        for (int i = 1; i <= 4; ++i) {
            for (int j = 5; j <= 8; ++j) {
                pairs.emplace_back(i, j);
            }
        }
        const std::vector<std::pair<int, int>> one{{1, 5}};
        auto spread = [](const Trace &t) {
            double m = 0.0, s = 0.0;
            for (double v : t.mag_db) {
                m += std::pow(10.0, v / 20.0);
            }
            m /= static_cast<double>(t.mag_db.size());
            for (double v : t.mag_db) {
                const double x = std::pow(10.0, v / 20.0) - m;
                s += x * x;
            }
            return std::sqrt(s / static_cast<double>(t.mag_db.size()));
        };
        const double drop_db = 20.0 * std::log10(spread(average_cross_traces(d, one)) /
                                                 spread(average_cross_traces(d, pairs)));
        CHECK(drop_db == doctest::Approx(20.0 * std::log10(std::sqrt(16.0))).epsilon(1.0 / 12.04));
    }

    TEST_CASE("synthetic survey shows both cavity modes")
    {
        const auto d = testing::synthetic_survey(451);
        const auto pairs = cross_pairs_from_sides(testing::survey_sides());
        const auto avg = average_cross_traces(d, pairs);
        const auto peaks = find_peaks(avg);
        REQUIRE(peaks.size() == 2);
        const double step = d.freqs[1] - d.freqs[0];
        CHECK(std::abs(peaks[0].f0 - 11.1e9) <= step);
        CHECK(std::abs(peaks[1].f0 - 18.1e9) <= step);
    }

    TEST_CASE("single Lorentzian peak")
    {
        const auto t = lorentzian_trace({7.3e9}, {-20.0}, 80e6);
        const auto peaks = find_peaks(t);
        REQUIRE(peaks.size() == 1);
        CHECK(std::abs(peaks[0].f0 - 7.3e9) <= 9e6);
        CHECK(std::abs(peaks[0].fwhm - 80e6) <= 9e6);
        CHECK(peaks[0].f_lo < peaks[0].f0);
        CHECK(peaks[0].f_hi > peaks[0].f0);
        CHECK(peaks[0].prominence_db > 30.0);
    }

    TEST_CASE("flat trace has no peaks")
    {
        Trace t;
        for (int k = 0; k < 100; ++k) {
            t.freqs.push_back(1e9 + 1e7 * k);
            t.mag_db.push_back(-50.0);
        }
        CHECK(find_peaks(t).empty());
    }

    TEST_CASE("close peaks keep the higher one")
    {
        const auto t = lorentzian_trace({10e9, 10.06e9}, {-25.0, -20.0}, 10e6);
        const auto close = find_peaks(t, 6.0, 100e6);
        REQUIRE(close.size() == 1);
        CHECK(std::abs(close[0].f0 - 10.06e9) <= 9e6);
        CHECK(find_peaks(t, 6.0, 20e6).size() == 2);
    }

    TEST_CASE("peak list is sorted and brackets each peak")
    {
        const auto t = lorentzian_trace({4e9, 9e9, 13e9, 17e9}, {-30.0, -20.0, -35.0, -25.0}, 60e6);
        const auto peaks = find_peaks(t);
        REQUIRE(peaks.size() == 4);
        for (std::size_t i = 0; i < peaks.size(); ++i) {
            CHECK(peaks[i].f_lo <= peaks[i].f0);
            CHECK(peaks[i].f_hi >= peaks[i].f0);
            CHECK(peaks[i].fwhm > 0.0);
            if (i > 0) {
                CHECK(peaks[i].f0 > peaks[i - 1].f0);
            }
        }
    }

    TEST_CASE("trace and peak CSV")
    {
        const auto t = lorentzian_trace({7.3e9}, {-20.0}, 80e6);
        std::ostringstream out;
        write_trace_csv(out, t);
        CHECK(out.str().rfind("freq_hz,avg_mag_db\n", 0) == 0);
        std::istringstream in(out.str());
        const auto back = read_trace_csv(in);
        CHECK(back.freqs == t.freqs);
        CHECK(back.mag_db == t.mag_db);
        std::ostringstream p;
        const auto peaks = find_peaks(t);
        write_peaks_csv(p, peaks);
        CHECK(p.str().rfind("f0_hz,prominence_db,fwhm_hz\n", 0) == 0);
    }

    TEST_CASE("touchstone file on disk")
    {
        testing::ScratchDir dir("survey");
        const auto d = random_network(4, 5, 3);
        std::ostringstream out;
        write_touchstone(out, d);
        testing::write_text(dir.file("net.s4p"), out.str());
        const auto back = read_touchstone_file(dir.file("net.s4p"));
        CHECK(back.n_ports == 4);
        CHECK_THROWS_AS(read_touchstone_file(dir.file("missing.s4p")), IoError);
    }
}
