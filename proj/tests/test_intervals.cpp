#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "bmd/error.hpp"
#include "bmd/intervals.hpp"
#include "bmd/sequence.hpp"

using bmd::Error;
using bmd::ErrorCode;
using bmd::IntervalSystem;
using bmd::SequenceSpec;
using bmd::Verdict;

namespace {

IntervalSystem unit_system() {
    return IntervalSystem::custom("unit", [](std::int64_t n) -> std::pair<double, double> {
        return {static_cast<double>(n), static_cast<double>(n + 1)};
    });
}

}  // namespace

TEST_CASE("built-in generators: endpoint formulas") {
    const auto geo = IntervalSystem::geometric(2, 1);
    CHECK(geo.interval(3) == std::pair<double, double>{8.0, 16.0});

    const auto fd1 = IntervalSystem::first_digit_blocks(1);
    CHECK(fd1.interval(2) == std::pair<double, double>{100.0, 199.0});

    const auto fd9 = IntervalSystem::first_digit_blocks(9);
    CHECK(fd9.interval(1) == std::pair<double, double>{90.0, 99.0});
    CHECK(fd9.interval(2).first >= fd9.interval(1).second);  // 900 >= 99

    const auto dec = IntervalSystem::decade_tail(1);
    CHECK(dec.interval(1) == std::pair<double, double>{19.0, 199.0});
    for (int n = 1; n <= 10; ++n)  // adjacent: b_n = a_{n+1}
        CHECK(dec.interval(n).second == dec.interval(n + 1).first);

    CHECK_THROWS_AS(IntervalSystem::first_digit_blocks(0), Error);
    CHECK_THROWS_AS(IntervalSystem::geometric(1.0, 1.0), Error);
    CHECK_THROWS_AS(IntervalSystem::geometric(2.0, 0.0), Error);
}

TEST_CASE("parse/render") {
    CHECK(IntervalSystem::parse("geometric:r=2,s=1").render() == "geometric:r=2,s=1");
    CHECK(IntervalSystem::parse("firstdigit:p=3").render() == "firstdigit:p=3");
    CHECK(IntervalSystem::parse("decade:p=1").render() == "decade:p=1");
    CHECK_THROWS_AS(IntervalSystem::parse("geometric:s=1"), Error);
    CHECK_THROWS_AS(IntervalSystem::parse("wedge:r=2"), Error);
}

TEST_CASE("classify: geometric systems are long, substantial and in C_{>1}") {
    const auto cls = bmd::classify(IntervalSystem::geometric(2, 1), 1000);
    // Substantial terms (b/a - 1)^2 = 1 each: the partial sum at N equals N.
    CHECK(cls.substantial_partial.back().value ==
          static_cast<double>(cls.substantial_partial.back().n));
    CHECK(cls.substantial_verdict == Verdict::divergent_like);
    CHECK(cls.short_long_verdict == Verdict::divergent_like);  // long
    CHECK(cls.in_c_gt1);
    CHECK(cls.ratio_limsup_est == doctest::Approx(2.0));
}

TEST_CASE("classify: the unit system is short and not substantial") {
    const auto cls = bmd::classify(unit_system(), 10000);
    CHECK(cls.substantial_partial.back().value < 1.645);  // sum 1/n^2 < pi^2/6
    CHECK(cls.substantial_verdict == Verdict::convergent_like);
    CHECK(cls.short_long_verdict == Verdict::convergent_like);  // short
    CHECK_FALSE(cls.in_c_gt1);
}

TEST_CASE("classify: decade-tail system is substantial with ratio -> 10") {
    const auto cls = bmd::classify(IntervalSystem::decade_tail(1), 14);
    CHECK(cls.substantial_verdict == Verdict::divergent_like);
    CHECK(cls.in_c_gt1);
    CHECK(cls.ratio_limsup_est > 9.0);
}

TEST_CASE("classify: partial sums nondecreasing; divergent verdict stable under doubling") {
    for (const auto& system : {IntervalSystem::geometric(2, 1), IntervalSystem::geometric(1.5, 2),
                               IntervalSystem::decade_tail(3)}) {
        const auto at_n = bmd::classify(system, 20);
        for (std::size_t i = 1; i < at_n.substantial_partial.size(); ++i)
            CHECK(at_n.substantial_partial[i].value >= at_n.substantial_partial[i - 1].value);
        const auto at_2n = bmd::classify(system, 40);
        if (at_n.substantial_verdict == Verdict::divergent_like)
            CHECK(at_2n.substantial_verdict == Verdict::divergent_like);
    }
}

TEST_CASE("classify rejects systems violating the interval contract") {
    const auto bad = IntervalSystem::custom("bad", [](std::int64_t n) -> std::pair<double, double> {
        return {static_cast<double>(n), static_cast<double>(n + 2)};  // overlaps the next one
    });
    try {
        bmd::classify(bad, 100);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::invalid_system);
    }
}

TEST_CASE("ell estimate: first-digit block system counts every member") {
    const auto spec = SequenceSpec::first_digit(1, 10);
    const auto ell = bmd::ell_estimate(IntervalSystem::first_digit_blocks(1), spec, 6);
    for (const auto& [n, ratio] : ell.per_n) CHECK(ratio >= 0.999);
    CHECK(ell.per_n[2].second == 1.0);  // 999 members in (1000, 1999], length 999
    CHECK(ell.liminf_est == doctest::Approx(1.0));
}

TEST_CASE("ell estimate: decade-tail system reproduces the upper density") {
    const auto spec = SequenceSpec::first_digit(1, 10);
    const auto ell = bmd::ell_estimate(IntervalSystem::decade_tail(1), spec, 6);
    CHECK(std::abs(ell.liminf_est - 5.0 / 9.0) < 1e-2);
}

TEST_CASE("ell estimate: even integers over dyadic intervals") {
    const auto spec = SequenceSpec::arithmetic(2, 0);
    const auto ell = bmd::ell_estimate(IntervalSystem::geometric(2, 1), spec, 20);
    for (const auto& [n, ratio] : ell.per_n) {
        const auto [a, b] = IntervalSystem::geometric(2, 1).interval(n);
        CHECK(std::abs(ratio - 0.5) <= 1.0 / (b - a) + 1e-15);
    }
}

TEST_CASE("ell estimate: arithmetic ratios deviate by at most 1/(b-a)") {
    for (const double c : {1.0, 2.0, 3.0, 5.0, 7.0}) {
        const auto spec = SequenceSpec::arithmetic(c, 0);
        for (const auto& system :
             {IntervalSystem::geometric(2, 1), IntervalSystem::geometric(1.5, 3)}) {
            const auto ell = bmd::ell_estimate(system, spec, 25);
            for (const auto& [n, ratio] : ell.per_n) {
                const auto [a, b] = system.interval(n);
                REQUIRE(std::abs(ratio - 1.0 / c) <= 1.0 / (b - a) + 1e-15);
            }
        }
    }
}

TEST_CASE("bm_lower_bound: paper systems beat generic grids on first-digit sets") {
    const auto spec = SequenceSpec::first_digit(1, 10);
    const std::array systems = {IntervalSystem::first_digit_blocks(1), IntervalSystem::decade_tail(1),
                                IntervalSystem::geometric(2, 1)};
    const auto lb = bmd::bm_lower_bound(spec, systems, 14);
    CHECK(lb.best == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(lb.witness_system == "firstdigit:p=1");
}

TEST_CASE("bm_lower_bound: multiples of three and squares") {
    const std::array dyadic = {IntervalSystem::geometric(2, 1)};
    const auto three = bmd::bm_lower_bound(SequenceSpec::arithmetic(3, 0), dyadic, 30);
    CHECK(three.best == doctest::Approx(1.0 / 3.0).epsilon(1e-3));

    const auto squares = bmd::bm_lower_bound(SequenceSpec::power(2), dyadic, 20);
    CHECK(squares.best <= 0.01);
}

TEST_CASE("search_lower_bound over the default grids") {
    const auto evens = bmd::search_lower_bound(SequenceSpec::arithmetic(2, 0),
                                               bmd::default_ratio_grid(), bmd::default_scale_grid(), 30);
    CHECK(std::abs(evens.best - 0.5) < 1e-2);

    // Geometric-only search plateaus near the upper density 5/9, below b = 1.
    const auto fd = bmd::search_lower_bound(SequenceSpec::first_digit(1, 10),
                                            bmd::default_ratio_grid(), bmd::default_scale_grid(), 30);
    CHECK(fd.best < 1.0);
    CHECK(std::abs(fd.best - 5.0 / 9.0) < 1e-2);

    const auto squares = bmd::search_lower_bound(SequenceSpec::power(2), bmd::default_ratio_grid(),
                                                 bmd::default_scale_grid(), 30);
    CHECK(squares.best < 1e-2);
}

TEST_CASE("in_C_gt1 implies a divergent-like substantial sum on the built-ins") {
    for (const auto& system :
         {IntervalSystem::geometric(2, 1), IntervalSystem::geometric(10, 3),
          IntervalSystem::first_digit_blocks(1), IntervalSystem::first_digit_blocks(9),
          IntervalSystem::decade_tail(1), IntervalSystem::decade_tail(7)}) {
        const auto cls = bmd::classify(system, 1000);
        if (cls.in_c_gt1) CHECK(cls.substantial_verdict == Verdict::divergent_like);
    }
}

TEST_CASE("first-digit systems cap at 14 intervals inside the safe horizon") {
    CHECK(IntervalSystem::first_digit_blocks(1).max_terms() == 14);
    CHECK(IntervalSystem::first_digit_blocks(9).max_terms() == 14);
    CHECK(IntervalSystem::decade_tail(9).max_terms() == 13);
    // Requests beyond the cap clamp rather than overflow.
    const auto ell =
        bmd::ell_estimate(IntervalSystem::first_digit_blocks(1), SequenceSpec::first_digit(1, 10), 99);
    CHECK(ell.terms_used == 14);
}
