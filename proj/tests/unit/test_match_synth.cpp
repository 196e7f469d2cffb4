#include <doctest.h>

#include <cmath>
#include <vector>

#include "qpack/constants.hpp"
#include "qpack/errors.hpp"
#include "qpack/hidden_mode.hpp"
#include "qpack/match_synth.hpp"

using namespace qpack;
using namespace qpack::match;

namespace {

double chebyshev_t3(double x) { return 4.0 * x * x * x - 3.0 * x; }

// Power transfer of the ideal prototypes at normalized frequency w.
double butterworth_power(double w) { return 1.0 / (1.0 + std::pow(w, 6)); }

double chebyshev_power(double w, double ripple_db)
{
    const double eps2 = std::pow(10.0, ripple_db / 10.0) - 1.0;
    const double t = chebyshev_t3(w);
    return 1.0 / (1.0 + eps2 * t * t);
}

FilterSpec spec(FilterFamily family, double ripple = 0.0, double fc = 10e9)
{
    FilterSpec s;
    s.family = family;
    s.ripple_db = ripple;
    s.fc = fc;
    return s;
}

} // namespace

TEST_SUITE("match_synth")
{
    TEST_CASE("prototype element values")
    {
        const auto b3 = prototype_g_values(FilterFamily::butterworth, 3);
        CHECK(b3[0] == doctest::Approx(1.0));
        CHECK(b3[1] == doctest::Approx(2.0));
        CHECK(b3[2] == doctest::Approx(1.0));
        const auto b1 = prototype_g_values(FilterFamily::butterworth, 1);
        CHECK(b1[0] == doctest::Approx(2.0));
        const auto c3 = prototype_g_values(FilterFamily::chebyshev, 3, 3.0);
        CHECK(c3[0] == doctest::Approx(3.3487).epsilon(1e-4));
        CHECK(c3[1] == doctest::Approx(0.7117).epsilon(1e-4));
        CHECK(c3[2] == doctest::Approx(3.3487).epsilon(1e-4));
        const auto c5 = prototype_g_values(FilterFamily::chebyshev, 5, 0.5);
        // Tabulated 0.5 dB, n = 5.
        CHECK(c5[0] == doctest::Approx(1.7058).epsilon(1e-4));
        CHECK(c5[1] == doctest::Approx(1.2296).epsilon(1e-4));
        CHECK(c5[2] == doctest::Approx(2.5408).epsilon(1e-4));
        CHECK_THROWS_AS(prototype_g_values(FilterFamily::chebyshev, 3, 0.0), DomainError);
        CHECK_THROWS_AS(prototype_g_values(FilterFamily::butterworth, 0), DomainError);
    }

    TEST_CASE("maximum compensable inductance")
    {
        CHECK(max_compensable_inductance(spec(FilterFamily::butterworth)) == doctest::Approx(1.5915e-9).epsilon(1e-4));
        CHECK(max_compensable_inductance(spec(FilterFamily::chebyshev, 3.0)) ==
              doctest::Approx(0.566e-9).epsilon(2e-3));
        CHECK_THROWS_AS(max_compensable_inductance(spec(FilterFamily::chebyshev, 0.0)), DomainError);
    }

    TEST_CASE("inductance limit scales as the inverse cutoff")
    {
        const double base = max_compensable_inductance(spec(FilterFamily::butterworth, 0.0, 5e9));
        for (double fc : {2e9, 7.5e9, 20e9}) {
            CHECK(max_compensable_inductance(spec(FilterFamily::butterworth, 0.0, fc)) * fc ==
                  doctest::Approx(base * 5e9));
        }
    }

    TEST_CASE("synthesis and feasibility")
    {
        const auto ok = synthesize_match(1e-9, 20e-15, spec(FilterFamily::butterworth));
        CHECK(ok.feasible);
        CHECK(ok.margin == doctest::Approx(0.5915e-9).epsilon(1e-3));
        CHECK(ok.c3 + ok.c_parasitic == doctest::Approx(ok.c1));

        const auto bad = synthesize_match(2e-9, 20e-15, spec(FilterFamily::butterworth));
        CHECK_FALSE(bad.feasible);
        CHECK(bad.margin == doctest::Approx(-0.41e-9).epsilon(5e-3));

        auto fourth = spec(FilterFamily::butterworth);
        fourth.order = 4;
        CHECK_THROWS_AS(synthesize_match(1e-9, 0.0, fourth), DomainError);
    }

    TEST_CASE("single-capacitor LC match")
    {
        const auto m = synthesize_lc_match(1e-9, 20e-15, 50.0);
        CHECK(m.feasible);
        CHECK(m.c_tuning == doctest::Approx(380e-15));
        CHECK(m.impedance == doctest::Approx(50.0));
        CHECK_FALSE(synthesize_lc_match(1e-9, 500e-15, 50.0).feasible);
    }

    TEST_CASE("cascade response matches the prototype power transfer")
    {
        const double fc = 10e9;
        const auto bw = synthesize_match(1e-9, 20e-15, spec(FilterFamily::butterworth, 0.0, fc));
        const auto ch = synthesize_match(0.3e-9, 20e-15, spec(FilterFamily::chebyshev, 3.0, fc));
        for (double w : {0.05, 0.3, 0.7, 1.0, 1.3, 2.0, 4.0}) {
            CHECK(std::norm(filter_s21(bw, 50.0, w * fc)) == doctest::Approx(butterworth_power(w)).epsilon(1e-9));
            CHECK(std::norm(filter_s21(ch, 50.0, w * fc)) == doctest::Approx(chebyshev_power(w, 3.0)).epsilon(1e-6));
        }
        CHECK(20.0 * std::log10(std::abs(filter_s21(bw, 50.0, fc))) == doctest::Approx(-3.0103).epsilon(1e-4));
        CHECK(std::abs(filter_s21(bw, 50.0, 1.0)) == doctest::Approx(1.0));
    }

    TEST_CASE("response sweep is identical in both execution modes")
    {
        const auto m = synthesize_match(1e-9, 20e-15, spec(FilterFamily::chebyshev, 0.5));
        const auto grid = hidden::make_grid(0.1e9, 30e9, 1001);
        const auto a = filter_response(m, 50.0, grid, Execution::serial);
        const auto b = filter_response(m, 50.0, grid, Execution::parallel);
        CHECK(a == b);
        CHECK(a.front() > -1e-3);
    }

    TEST_CASE("family names")
    {
        CHECK(parse_family("chebyshev") == FilterFamily::chebyshev);
        CHECK(to_string(FilterFamily::butterworth) == "butterworth");
        CHECK_THROWS_AS(parse_family("elliptic"), DomainError);
    }
}
