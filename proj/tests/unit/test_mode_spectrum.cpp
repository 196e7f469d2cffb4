#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qpack/constants.hpp"
#include "qpack/design_rules.hpp"
#include "qpack/errors.hpp"
#include "qpack/mode_spectrum.hpp"

using namespace qpack;
using namespace qpack::modes;

namespace {

const RuleFinding &rule(const std::vector<RuleFinding> &all, const std::string &name)
{
    const auto it = std::find_if(all.begin(), all.end(), [&](const RuleFinding &r) { return r.rule == name; });
    REQUIRE(it != all.end());
    return *it;
}

PackageDescription compliant()
{
    PackageDescription d;
    d.max_qubit_freq_hz = 5.5e9;
    d.qubit_surface_distance_m = 3e-3;
    d.connector_impedance_ohm = 50.0;
    d.waveguide_impedance_ohm = 52.0;
    d.via_pitch_m = 0.5e-3;
    d.via_eps_r = 3.66;
    d.via_f_max_hz = 10e9;
    d.ground_bonds_between_signals = 3;
    d.package_fundamental_hz = 11.1e9;
    d.chip_a_m = 5e-3;
    d.chip_b_m = 5e-3;
    return d;
}

} // namespace

TEST_SUITE("mode_spectrum")
{
    TEST_CASE("chip TM110 modes")
    {
        CHECK(chip_mode_freq(5e-3, 5e-3) == doctest::Approx(12.41e9).epsilon(2e-3));
        CHECK(chip_mode_freq(10e-3, 10e-3) == doctest::Approx(6.20e9).epsilon(2e-3));
        CHECK(chip_mode_freq(20e-3, 5e-3) == doctest::Approx(9.04e9).epsilon(2e-3));
        CHECK(chip_mode_freq(5e-3, 5e-3, 1.0) == doctest::Approx(chip_mode_freq(5e-3, 5e-3) * std::sqrt(kSiliconEpsR)));
    }

    TEST_CASE("cavity formula")
    {
        const CavityGeometry cube{30e-3, 30e-3, 30e-3, 1.0, 1.0};
        const double f = cavity_mode_freq(cube, {1, 0, 1, ModeKind::te});
        CHECK(f == doctest::Approx(PhysicalConstants::c * std::sqrt(2.0) / (2.0 * 30e-3)));
        CHECK(f == doctest::Approx(7.0662e9).epsilon(1e-4));
        const CavityGeometry filled{30e-3, 30e-3, 30e-3, 4.0, 1.0};
        CHECK(cavity_mode_freq(filled, {1, 0, 1, ModeKind::te}) == doctest::Approx(f / 2.0));
        CHECK_THROWS_AS(cavity_mode_freq(cube, {0, 0, 0, ModeKind::te}), DomainError);
        CHECK_THROWS_AS(cavity_mode_freq(cube, {1, 0, 1, ModeKind::tm}), DomainError);
    }

    TEST_CASE("index validity")
    {
        CHECK(is_valid({1, 1, 0, ModeKind::tm}));
        CHECK_FALSE(is_valid({1, 1, 0, ModeKind::te}));
        CHECK(is_valid({0, 1, 1, ModeKind::te}));
        CHECK_FALSE(is_valid({0, 0, 1, ModeKind::te}));
        CHECK_FALSE(is_valid({0, 1, 1, ModeKind::tm}));
        CHECK(mode_name({1, 1, 0, ModeKind::tm}) == "TM110");
    }

    TEST_CASE("enumeration of a cube")
    {
        const CavityGeometry cube{30e-3, 30e-3, 30e-3, 1.0, 1.0};
        const auto modes = list_modes_below(cube, 7.2e9);
        // TE011, TE101 and TM110 are degenerate at 7.07 GHz.
        REQUIRE(modes.size() == 3);
        for (const auto &m : modes) {
            CHECK(m.frequency == doctest::Approx(7.0662e9).epsilon(1e-4));
        }
        CHECK(list_modes_below(cube, 7.0e9).empty());
    }

    TEST_CASE("enumeration is sorted and complete")
    {
        const CavityGeometry box{24e-3, 18e-3, 7e-3, 1.0, 1.0};
        const double f_max = 25e9;
        const auto modes = list_modes_below(box, f_max);
        REQUIRE_FALSE(modes.empty());
        for (std::size_t i = 1; i < modes.size(); ++i) {
            CHECK(modes[i - 1].frequency <= modes[i].frequency);
        }
        std::size_t brute = 0;
        for (int n = 0; n <= 10; ++n) {
            for (int m = 0; m <= 10; ++m) {
                for (int l = 0; l <= 10; ++l) {
                    for (auto kind : {ModeKind::te, ModeKind::tm}) {
                        const ModeIndex idx{n, m, l, kind};
                        if (is_valid(idx) && cavity_mode_freq(box, idx) <= f_max) {
                            ++brute;
                        }
                    }
                }
            }
        }
        CHECK(modes.size() == brute);
        const auto te_only = list_modes_below(box, f_max, {ModeKind::te});
        CHECK(std::all_of(te_only.begin(), te_only.end(), [](const auto &m) { return m.index.kind == ModeKind::te; }));
    }

    TEST_CASE("chip mode list starts at TM110")
    {
        const auto chip = list_chip_modes_below(5e-3, 5e-3, kSiliconEpsR, 30e9);
        REQUIRE_FALSE(chip.empty());
        CHECK(chip.front().frequency == doctest::Approx(chip_mode_freq(5e-3, 5e-3)));
        CHECK(chip.front().source == ModeSource::chip);
    }

    TEST_CASE("stub modes")
    {
        CHECK(stub_mode_freq(3e-2, 1.0) == doctest::Approx(9.993e9).epsilon(1e-3));
        CHECK(stub_length_for_freq(1.15e9, 3.66) == doctest::Approx(0.136).epsilon(3e-3));
        CHECK(stub_mode_freq(stub_length_for_freq(4.2e9, 2.2), 2.2) == doctest::Approx(4.2e9));
    }

    TEST_CASE("cap on the enumeration index")
    {
        const CavityGeometry thin{100e-3, 100e-3, 0.1e-3, 1.0, 1.0};
        CHECK_THROWS_AS(list_modes_below(thin, 1e12), DomainError);
    }
}

TEST_SUITE("design_rules")
{
    TEST_CASE("compliant package passes every rule")
    {
        for (const auto &r : design_rule_check(compliant())) {
            CHECK_MESSAGE(r.status == RuleStatus::pass, r.rule);
        }
    }

    TEST_CASE("package mode at the boundary")
    {
        auto d = compliant();
        const auto ok = design_rule_check(d);
        CHECK(rule(ok, "package_mode_margin").status == RuleStatus::pass);
        d.package_fundamental_hz = 11.0e9;
        CHECK(rule(design_rule_check(d), "package_mode_margin").status == RuleStatus::fail);
    }

    TEST_CASE("via pitch against the fence limit")
    {
        auto d = compliant();
        d.via_pitch_m = 1.0e-3;
        const auto &r = rule(design_rule_check(d), "via_fence_spacing");
        CHECK(r.status == RuleStatus::fail);
        CHECK(*r.limit == doctest::Approx(0.784e-3).epsilon(1e-3));
    }

    TEST_CASE("impedance spread of ten percent is the limit")
    {
        auto d = compliant();
        d.waveguide_impedance_ohm = 55.0;
        CHECK(rule(design_rule_check(d), "impedance_match").status == RuleStatus::pass);
        d.waveguide_impedance_ohm = 60.0;
        CHECK(rule(design_rule_check(d), "impedance_match").status == RuleStatus::fail);
    }

    TEST_CASE("missing inputs are not evaluated")
    {
        for (const auto &r : design_rule_check({})) {
            CHECK(r.status == RuleStatus::not_evaluated);
        }
    }

    TEST_CASE("fundamental derived from package dimensions")
    {
        auto d = compliant();
        d.package_fundamental_hz.reset();
        d.package_a_m = 30e-3;
        d.package_b_m = 30e-3;
        d.package_d_m = 30e-3;
        const auto &r = rule(design_rule_check(d), "package_mode_margin");
        CHECK(*r.measured == doctest::Approx(7.0662e9).epsilon(1e-4));
        CHECK(r.status == RuleStatus::fail);
    }
}
