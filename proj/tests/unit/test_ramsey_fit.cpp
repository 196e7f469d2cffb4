#include <doctest.h>

#include <cmath>
#include <random>

#include "qpack/constants.hpp"
#include "qpack/errors.hpp"
#include "qpack/hidden_mode.hpp"
#include "qpack/ramsey.hpp"

using namespace qpack;
using namespace qpack::hidden;

namespace {

RamseyTrace synthetic(double f, double gamma, double t_max = 40e-6, std::size_t n = 801, double amp = 0.5,
                      double offset = 0.5, double phase = 0.0)
{
    RamseyTrace t;
    t.delays = make_delays(0.0, t_max, n);
    RamseyFit p{f, gamma, amp, offset, phase, 0.0, 0};
    for (double d : t.delays) {
        t.p_excited.push_back(ramsey_model(p, d));
    }
    t.nominal_detuning = f;
    return t;
}

} // namespace

TEST_SUITE("ramsey_fit")
{
    TEST_CASE("noiseless trace is recovered")
    {
        const auto fit = fit_ramsey(synthetic(1e6, 1.0 / 53.2e-6));
        CHECK(fit.f_ramsey == doctest::Approx(1e6).epsilon(1e-3));
        CHECK(fit.gamma2_star == doctest::Approx(1.0 / 53.2e-6).epsilon(1e-3));
        CHECK(fit.amplitude == doctest::Approx(0.5).epsilon(1e-3));
        CHECK(fit.offset == doctest::Approx(0.5).epsilon(1e-3));
        CHECK(fit.rms_residual < 1e-8);
    }

    TEST_CASE("off-grid frequencies, phases and contrast")
    {
        for (double f : {0.37e6, 1.93e6, 2.2e6, 4.71e6}) {
            for (double phase : {-2.0, 0.0, 0.9}) {
                const auto fit = fit_ramsey(synthetic(f, 4.2e4, 40e-6, 801, 0.42, 0.47, phase));
                CHECK(fit.f_ramsey == doctest::Approx(f).epsilon(1e-6));
                CHECK(fit.gamma2_star == doctest::Approx(4.2e4).epsilon(1e-5));
                CHECK(fit.amplitude == doctest::Approx(0.42).epsilon(1e-6));
            }
        }
    }

    TEST_CASE("undamped cosine")
    {
        const auto fit = fit_ramsey(synthetic(1e6, 0.0));
        CHECK(fit.gamma2_star >= 0.0);
        CHECK(fit.gamma2_star < 1e-2 * kTwoPi * 1e6);
    }

    TEST_CASE("time unit does not matter")
    {
        const auto s = synthetic(1.7e6, 3.1e4);
        auto us = s;
        for (auto &d : us.delays) {
            d *= 1e6;
        }
        const auto a = fit_ramsey(s);
        const auto b = fit_ramsey(us);
        CHECK(b.f_ramsey * 1e6 == doctest::Approx(a.f_ramsey).epsilon(1e-9));
        CHECK(b.gamma2_star * 1e6 == doctest::Approx(a.gamma2_star).epsilon(1e-9));
    }

    TEST_CASE("shot-noise traces still fit")
    {
        auto t = synthetic(2e6, 1.0 / 40e-6);
        std::mt19937_64 rng(11);
        for (auto &p : t.p_excited) {
            std::binomial_distribution<int> shot(2000, p);
            p = shot(rng) / 2000.0;
        }
        const auto fit = fit_ramsey(t);
        CHECK(fit.f_ramsey == doctest::Approx(2e6).epsilon(1e-3));
        CHECK(fit.gamma2_star == doctest::Approx(2.5e4).epsilon(0.05));
    }

    TEST_CASE("initial guess lands near the answer")
    {
        const auto g = initial_ramsey_guess(synthetic(1.3e6, 2e4));
        CHECK(g.f_ramsey == doctest::Approx(1.3e6).epsilon(1e-2));
    }

    TEST_CASE("rejections")
    {
        RamseyTrace few;
        few.delays = {0.0, 1e-6, 2e-6};
        few.p_excited = {0.5, 0.5, 0.5};
        CHECK_THROWS_AS(validate(few), DomainError);

        auto backwards = synthetic(1e6, 1e4);
        std::swap(backwards.delays[3], backwards.delays[4]);
        CHECK_THROWS_AS(validate(backwards), DomainError);

        auto out_of_range = synthetic(1e6, 1e4);
        out_of_range.p_excited[5] = 1.5;
        CHECK_THROWS_AS(validate(out_of_range), DomainError);

        // Less than one period in the window.
        CHECK_THROWS_AS(fit_ramsey(synthetic(1e4, 1e3)), RamseyFitError);

        // Flat trace has no oscillation to fit.
        auto flat = synthetic(1e6, 1e4);
        for (auto &p : flat.p_excited) {
            p = 0.5;
        }
        try {
            fit_ramsey(flat);
            FAIL("flat trace fitted");
        } catch (const RamseyFitError &e) {
            CHECK(e.initial_guess().f_ramsey >= 0.0);
        } catch (const DomainError &) {
        }
    }
}
