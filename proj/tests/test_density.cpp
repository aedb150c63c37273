#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "bmd/density.hpp"
#include "bmd/error.hpp"
#include "bmd/sequence.hpp"

using bmd::DensityEstimate;
using bmd::SequenceSpec;

TEST_CASE("counting method: arithmetic progressions settle on 1/c") {
    const auto est = bmd::density_by_counting(SequenceSpec::arithmetic(4, 0), 100000);
    CHECK(est.lower_est == doctest::Approx(0.25).epsilon(1e-3));
    CHECK(est.upper_est == doctest::Approx(0.25).epsilon(1e-3));
    CHECK(est.lower_est <= est.upper_est);
}

TEST_CASE("counting method: first-digit oscillation extremes") {
    // limsup F(n)/n = 10/(9(p+1)), liminf = 1/(9p); the extremal breakpoints
    // p*10^m-1 and (p+1)*10^m-1 are forced into the grid.
    for (int p = 1; p <= 9; ++p) {
        const auto est = bmd::density_by_counting(SequenceSpec::first_digit(p, 10), 1000000);
        const double upper = 10.0 / (9.0 * (p + 1));
        const double lower = 1.0 / (9.0 * p);
        CHECK(std::abs(est.upper_est - upper) / upper < 0.01);
        CHECK(std::abs(est.lower_est - lower) / lower < 0.01);
    }
}

TEST_CASE("counting method: squares at the horizon checkpoint") {
    const auto est = bmd::density_by_counting(SequenceSpec::power(2), 1000000);
    // F(n) = floor(sqrt(n)): the final checkpoint ratio is exactly 1e-3.
    CHECK(est.checkpoints.back().n == 1000000);
    CHECK(est.checkpoints.back().ratio == 0.001);
    CHECK(est.lower_est == 0.001);
}

TEST_CASE("index method: worked values") {
    const auto exact = bmd::density_by_index(SequenceSpec::arithmetic(4, 0), 100000);
    for (const auto& c : exact.checkpoints) CHECK(c.ratio == 0.25);  // k/(4k)

    const auto sine = bmd::density_by_index(SequenceSpec::perturbed(2.0, bmd::PsiKind::sine), 100000);
    CHECK(std::abs(sine.lower_est - 0.5) < 1e-4);
    CHECK(std::abs(sine.upper_est - 0.5) < 1e-4);

    const auto squares = bmd::density_by_index(SequenceSpec::power(2), 10000);
    CHECK(squares.checkpoints.back().ratio == 1e-4);  // k/k^2 at K
    CHECK(squares.upper_est <= 1e-3);
}

TEST_CASE("lower_est <= upper_est and the tail window is the inf/sup range") {
    for (const auto& spec :
         {SequenceSpec::arithmetic(3, 1), SequenceSpec::first_digit(3, 10), SequenceSpec::power(2),
          SequenceSpec::perturbed(1.5, bmd::PsiKind::alternating)}) {
        for (const bool counting : {true, false}) {
            const auto est = counting ? bmd::density_by_counting(spec, 100000)
                                      : bmd::density_by_index(spec, 100000);
            REQUIRE(est.lower_est <= est.upper_est);
            double lo = est.checkpoints[est.tail_begin].ratio, hi = lo;
            for (std::size_t i = est.tail_begin; i < est.checkpoints.size(); ++i) {
                lo = std::min(lo, est.checkpoints[i].ratio);
                hi = std::max(hi, est.checkpoints[i].ratio);
            }
            CHECK(est.lower_est == lo);
            CHECK(est.upper_est == hi);
        }
    }
}

TEST_CASE("arithmetic deviation bound |ratio - 1/c| <= (a+c)/n at every checkpoint") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> cs(1.0, 10.0);
    std::uniform_real_distribution<double> as(0.0, 10.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double c = cs(rng), a = as(rng);
        const auto spec = SequenceSpec::arithmetic(c, a);
        for (const auto& pt : bmd::density_by_counting(spec, 100000).checkpoints)
            REQUIRE(std::abs(pt.ratio - 1.0 / c) <=
                    (a + c) / static_cast<double>(pt.n) + 1e-15);
        for (const auto& pt : bmd::density_by_index(spec, 100000).checkpoints)
            REQUIRE(std::abs(pt.ratio - 1.0 / c) <=
                    (a + c) / static_cast<double>(pt.n) + 1e-15);
    }
}

TEST_CASE("monotone refinement: enlarging the tail window widens the envelope") {
    for (const auto& spec : {SequenceSpec::first_digit(2, 10), SequenceSpec::power(2),
                             SequenceSpec::arithmetic(3, 5)}) {
        const auto narrow = bmd::density_by_counting(spec, 1000000, 0.25);
        const auto base = bmd::density_by_counting(spec, 1000000, 0.5);
        const auto wide = bmd::density_by_counting(spec, 1000000, 0.75);
        CHECK(wide.lower_est <= base.lower_est);
        CHECK(base.lower_est <= narrow.lower_est);
        CHECK(wide.upper_est >= base.upper_est);
        CHECK(base.upper_est >= narrow.upper_est);
    }
}

TEST_CASE("check_equivalence: discrepancy magnitudes from the worked examples") {
    const auto ap = bmd::check_equivalence(SequenceSpec::arithmetic(3, 1), 100000);
    CHECK(ap.lower_discrepancy < 1e-3);
    CHECK(ap.upper_discrepancy < 1e-3);

    const auto fd = bmd::check_equivalence(SequenceSpec::first_digit(1, 10), 1000000);
    CHECK(fd.upper_discrepancy / fd.by_counting.upper_est < 0.02);

    const auto sq = bmd::check_equivalence(SequenceSpec::power(2), 1000000);
    CHECK(sq.by_counting.checkpoints.back().ratio <= 2e-3);
    CHECK(sq.by_index.checkpoints.back().ratio <= 2e-3);
    CHECK(sq.by_index.upper_est <= 2e-3);
}

TEST_CASE("check_equivalence: discrepancy shrinks over a horizon ladder") {
    for (const auto& spec : {SequenceSpec::arithmetic(3, 1), SequenceSpec::first_digit(1, 10),
                             SequenceSpec::power(2)}) {
        double prev_lower = 0, prev_upper = 0;
        bool first = true;
        for (const std::int64_t horizon : {10000, 100000, 1000000}) {
            const auto rep = bmd::check_equivalence(spec, horizon);
            if (!first) {
                CHECK(rep.lower_discrepancy <= prev_lower + 1e-6);
                CHECK(rep.upper_discrepancy <= prev_upper + 1e-6);
            }
            prev_lower = rep.lower_discrepancy;
            prev_upper = rep.upper_discrepancy;
            first = false;
        }
    }
}

TEST_CASE("file prefixes clamp the horizon") {
    std::vector<double> values;
    for (int n = 1; n <= 5000; ++n) values.push_back(2.0 * n);
    const auto spec = SequenceSpec::from_values(values);
    const auto est = bmd::density_by_counting(spec, 1000000);
    CHECK(est.horizon_clamped);
    CHECK(est.horizon == 10000);  // last term
    CHECK(est.upper_est == doctest::Approx(0.5).epsilon(1e-3));
    const auto idx = bmd::density_by_index(spec, 1000000);
    CHECK(idx.horizon_clamped);
    CHECK(idx.horizon == 5000);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS((void)bmd::density_by_counting(SequenceSpec::power(2), 50), bmd::Error);
    CHECK_THROWS_AS((void)bmd::check_equivalence(SequenceSpec::power(2), 500), bmd::Error);
}
