#include <doctest.h>

#include "swipt/eh_model.hpp"
#include "swipt/ps_policy.hpp"

#include <cmath>

using namespace swipt;

namespace {

const SystemParams kParams{};
const DerivedParams kDerived = derive(kParams, default_eh_model());

} // namespace

TEST_CASE("optimal rho examples")
{
    const double floor = kDerived.varpi * std::pow(15.0, 3.0);
    CHECK(optimal_rho(kDerived, floor, 15.0, 3.0) == 0.0);
    CHECK(optimal_rho(kDerived, 2 * floor, 15.0, 3.0) == doctest::Approx(0.5));
    CHECK(optimal_rho(kDerived, 1.0, 15.0, 3.0) == doctest::Approx(1 - 7e-10 * 3375).epsilon(1e-14));
    CHECK(optimal_rho(kDerived, 1.0, 15.0, 3.0) == doctest::Approx(0.99999764).epsilon(1e-8));
    CHECK(optimal_rho(kDerived, 0.0, 15.0, 3.0) == 0.0);
}

TEST_CASE("optimal split keeps the info fraction exact")
{
    const PowerSplit s = optimal_split(kDerived, 1.0, 15.0, 3.0);
    CHECK(s.info == doctest::Approx(7e-10 * 3375).epsilon(1e-14));
    CHECK(s.harvest + s.info == doctest::Approx(1.0));
    const PowerSplit z = optimal_split(kDerived, 1e-9, 15.0, 3.0);
    CHECK(z.harvest == 0.0);
    CHECK(z.info == 1.0);
    CHECK_THROWS_AS(optimal_split(kDerived, 1.0, 0.0, 3.0), InvalidArgument);
    CHECK_THROWS_AS(optimal_split(kDerived, -1.0, 15.0, 3.0), InvalidArgument);
}

TEST_CASE("optimal rho is monotone in gain")
{
    double prev = -1.0;
    for (double g = 1e-8; g < 100.0; g *= 1.3) {
        const double r = optimal_rho(kDerived, g, 15.0, 3.0);
        CHECK(r >= prev);
        CHECK(r >= 0.0);
        CHECK(r < 1.0);
        prev = r;
    }
}

TEST_CASE("policy selection")
{
    RngStream rng(1, 1);
    const SplitPair zero = select_ratios(OptimalDynamic{}, kDerived, kParams, {1e-9, 1e-9}, rng);
    CHECK(zero.a.harvest == 0.0);
    CHECK(zero.b.harvest == 0.0);

    const SplitPair st = select_ratios(StaticEqual{0.5}, kDerived, kParams, {0.3, 2.0}, rng);
    CHECK(st.a.harvest == 0.5);
    CHECK(st.b.harvest == 0.5);
    CHECK(st.a.info == 0.5);

    const SplitPair opt = select_ratios(OptimalDynamic{}, kDerived, kParams, {1.0, 1.0}, rng);
    CHECK(opt.a.info == doctest::Approx(7e-10 * 3375));
    CHECK(opt.b.info == doctest::Approx(7e-10 * 1000));
}

TEST_CASE("random policy moments")
{
    const int n = 1'000'000;
    double sa = 0.0, sb = 0.0;
    RngStream rng(99, 0);
    for (int i = 0; i < n; ++i) {
        const SplitPair s = select_ratios(RandomUniform{}, kDerived, kParams, {1.0, 1.0}, rng);
        sa += s.a.harvest;
        sb += s.b.harvest;
        REQUIRE(s.a.harvest + s.a.info == doctest::Approx(1.0));
    }
    CHECK(std::abs(sa / n - 0.5) <= 0.002);
    CHECK(std::abs(sb / n - 0.5) <= 0.002);
}

TEST_CASE("policy parsing")
{
    CHECK(std::holds_alternative<OptimalDynamic>(parse_policy("optimal")));
    CHECK(std::holds_alternative<RandomUniform>(parse_policy("random")));
    const PsPolicy s = parse_policy("static:0.25");
    REQUIRE(std::holds_alternative<StaticEqual>(s));
    CHECK(std::get<StaticEqual>(s).rho0 == 0.25);
    CHECK(policy_name(s) == "static:0.25");
    CHECK(policy_name(OptimalDynamic{}) == "optimal");
    CHECK_THROWS_AS(parse_policy("static:1"), InvalidArgument);
    CHECK_THROWS_AS(parse_policy("static:-0.1"), InvalidArgument);
    CHECK_THROWS_AS(parse_policy("static:x"), InvalidArgument);
    CHECK_THROWS_AS(parse_policy("greedy"), InvalidArgument);
}
