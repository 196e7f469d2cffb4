#include <doctest.h>

#include <sstream>
#include <vector>

#include "fixtures.hpp"
#include "qpack/constants.hpp"
#include "qpack/errors.hpp"
#include "qpack/material_loss.hpp"

using namespace qpack;
using namespace qpack::loss;

namespace {

MaterialLossEntry entry(const char *label, std::optional<double> qc, std::optional<double> qd)
{
    MaterialLossEntry e;
    e.label = label;
    e.inv_qc = qc;
    e.inv_qd = qd;
    return e;
}

} // namespace

TEST_SUITE("material_loss")
{
    TEST_CASE("relaxation rate sums participation over quality")
    {
        CHECK(relaxation_rate({}, 5e9) == 0.0);
        const std::vector<LossChannel> one{{"bulk", 1.0, 5e8}};
        CHECK(relaxation_rate(one, 5e9) == doctest::Approx(62.83).epsilon(1e-4));
        const std::vector<LossChannel> two{{"a", 0.3, 1e6}, {"b", 0.7, 2e6}};
        CHECK(relaxation_rate(two, 4e9) == doctest::Approx(kTwoPi * 4e9 * (0.3 / 1e6 + 0.7 / 2e6)));
    }

    TEST_CASE("relaxation rate rejects bad channels")
    {
        const std::vector<LossChannel> over{{"a", 0.8, 1e6}, {"b", 0.5, 1e6}};
        CHECK_THROWS_AS(relaxation_rate(over, 5e9), DomainError);
        const std::vector<LossChannel> negative_q{{"a", 0.5, -1.0}};
        CHECK_THROWS_AS(relaxation_rate(negative_q, 5e9), DomainError);
        const std::vector<LossChannel> ok{{"a", 0.5, 1e6}};
        CHECK_THROWS_AS(relaxation_rate(ok, 0.0), DomainError);
    }

    TEST_CASE("T1 limits of the casing materials")
    {
        const auto au = entry("au", 5e-9, std::nullopt);
        const auto al = entry("al", std::nullopt, 5e-12);
        const auto cu = entry("cu", 2e-9, 1e-12);
        CHECK(t1_limit(au, 5e9).seconds() == doctest::Approx(6.366e-3).epsilon(1e-3));
        CHECK(t1_limit(al, 5e9).seconds() == doctest::Approx(6.366).epsilon(1e-3));
        CHECK(t1_limit(cu, 5e9).seconds() == doctest::Approx(1.590e-2).epsilon(1e-3));
    }

    TEST_CASE("lossless entry gives an unbounded lifetime")
    {
        const auto zero = entry("ideal", 0.0, 0.0);
        CHECK(t1_limit(zero, 5e9).is_unbounded());
        const auto empty = entry("none", std::nullopt, std::nullopt);
        CHECK_THROWS_AS(t1_limit(empty, 5e9), DomainError);
    }

    TEST_CASE("conductive loss scales as inverse root conductivity")
    {
        CHECK(scale_conductive_loss(2e-9, 5e10, 5e10) == doctest::Approx(2e-9));
        CHECK(scale_conductive_loss(2e-9, 5e10, 5e9) == doctest::Approx(6.32e-9).epsilon(1e-3));
        CHECK(scale_conductive_loss(2e-9, 5e10, 1e300) < 1e-150);
        CHECK_THROWS_AS(scale_conductive_loss(2e-9, 0.0, 1.0), DomainError);
    }

    TEST_CASE("dielectric loss scales linearly")
    {
        CHECK(scale_dielectric_loss(5e-12, 1.0, 1.0) == doctest::Approx(5e-12));
        CHECK(scale_dielectric_loss(5e-12, 1.0, 2.0) == doctest::Approx(1e-11));
        CHECK(scale_dielectric_loss(5e-12, 1.0, 0.4) == doctest::Approx(2e-12));
    }

    TEST_CASE("transverse rate")
    {
        CHECK(transverse_rate(0.0, 0.0) == 0.0);
        CHECK(transverse_rate(2e4, 0.0) == doctest::Approx(1e4));
        const double g1 = 1.0 / 121.4e-6;
        const double gphi = 1.0 / 53.2e-6 - g1 / 2.0;
        CHECK(1.0 / transverse_rate(g1, gphi) == doctest::Approx(53.2e-6));
        CHECK_THROWS_AS(transverse_rate(-1.0, 0.0), DomainError);
    }

    TEST_CASE("materials CSV")
    {
        const auto rows = read_materials_file(testing::data_dir() + "/table1_materials.csv");
        REQUIRE(rows.size() == 3);
        CHECK(rows[0].label == "bare_cu");
        CHECK(rows[1].inv_qc.has_value() == false);
        CHECK(*rows[2].inv_qc == doctest::Approx(5e-9));

        std::istringstream bad("label,inv_qc,inv_qd,conductivity_s_per_m,oxide_m,im_epsilon\nx,,,,,\n");
        CHECK_THROWS_AS(read_materials_csv(bad), ParseError);
        std::istringstream missing("label,inv_qc\nx,1e-9\n");
        CHECK_THROWS_AS(read_materials_csv(missing), ParseError);
        CHECK_THROWS_AS(read_materials_file("/nonexistent/materials.csv"), IoError);
    }
}
