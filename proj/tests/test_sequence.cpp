#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <vector>

#include "bmd/error.hpp"
#include "bmd/sequence.hpp"

using bmd::Error;
using bmd::ErrorCode;
using bmd::SequenceSpec;

namespace {

// Brute-force enumeration of positive integers whose leading base-10 digit is
// p, in increasing order. Oracle for the first-digit family.
std::vector<std::int64_t> first_digit_enumeration(int p, std::int64_t up_to) {
    std::vector<std::int64_t> out;
    for (std::int64_t v = 1; v <= up_to; ++v) {
        std::int64_t lead = v;
        while (lead >= 10) lead /= 10;
        if (lead == p) out.push_back(v);
    }
    return out;
}

bool throws_code(ErrorCode code, const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code() == code;
    }
    return false;
}

}  // namespace

TEST_CASE("term: worked values") {
    const auto alt = SequenceSpec::perturbed(1.5, bmd::PsiKind::alternating);
    CHECK(alt.term(1) == 2.0);
    CHECK(alt.term(2) == 4.0);
    CHECK(alt.term(3) == 5.0);
    CHECK(alt.term(4) == 7.0);
    CHECK(alt.term(5) == 8.0);
    CHECK(alt.term(6) == 10.0);

    CHECK(SequenceSpec::arithmetic(3, 0).term(5) == 15.0);
    CHECK(SequenceSpec::power(2).term(7) == 49.0);
    CHECK(SequenceSpec::log_power(2).term(3) == doctest::Approx(std::log(4.0) * 9.0));
}

TEST_CASE("term: first-digit family matches brute-force enumeration") {
    const auto oracle = first_digit_enumeration(1, 250000);
    const auto spec = SequenceSpec::first_digit(1, 10);
    for (std::size_t i = 0; i < oracle.size(); ++i)
        REQUIRE(spec.term(static_cast<std::int64_t>(i + 1)) == static_cast<double>(oracle[i]));
    // Enumeration 1, 10..19, 100, 101, ...: the 12th member is 100.
    CHECK(spec.term(12) == 100.0);
    CHECK(spec.term(13) == 101.0);

    const auto oracle7 = first_digit_enumeration(7, 100000);
    const auto spec7 = SequenceSpec::first_digit(7, 10);
    for (std::size_t i = 0; i < oracle7.size(); ++i)
        REQUIRE(spec7.term(static_cast<std::int64_t>(i + 1)) == static_cast<double>(oracle7[i]));
}

TEST_CASE("counting: definition cases and brute-force checks") {
    const auto fd1 = SequenceSpec::first_digit(1, 10);
    CHECK(fd1.counting(0) == 0);
    CHECK(fd1.counting(199) == 111);  // {1, 10..19, 100..199}
    CHECK(SequenceSpec::arithmetic(3, 0).counting(10) == 3);
    CHECK(SequenceSpec::power(2).counting(0.5) == 0);

    // F(lambda_k) = k on a strictly increasing family.
    for (const auto& spec :
         {SequenceSpec::arithmetic(2.5, 1), fd1, SequenceSpec::power(3),
          SequenceSpec::log_power(2), SequenceSpec::perturbed(2.0, bmd::PsiKind::sine)}) {
        for (std::int64_t k = 1; k <= 200; ++k) CHECK(spec.counting(spec.term(k)) == k);
    }
}

TEST_CASE("counting: closed forms agree with term() bisection on random queries") {
    std::mt19937_64 rng(7);
    for (const auto& spec : {SequenceSpec::arithmetic(3, 1), SequenceSpec::first_digit(2, 10),
                             SequenceSpec::first_digit(9, 10), SequenceSpec::power(2)}) {
        std::uniform_real_distribution<double> dist(0.0, 1.0e6);
        for (int i = 0; i < 1000; ++i) {
            const double t = dist(rng);
            std::int64_t brute = 0;
            if (spec.term(1) <= t) {
                std::int64_t lo = 1, hi = 2;
                while (spec.term(hi) <= t) {
                    lo = hi;
                    hi *= 2;
                }
                while (lo + 1 < hi) {
                    const auto mid = lo + (hi - lo) / 2;
                    (spec.term(mid) <= t ? lo : hi) = mid;
                }
                brute = lo;
            }
            REQUIRE(spec.counting(t) == brute);
        }
    }
}

TEST_CASE("count_in_interval: half-open convention") {
    const auto fd1 = SequenceSpec::first_digit(1, 10);
    CHECK(fd1.count_in_interval(1000, 1999) == 999);  // 1000 excluded by the open left end
    CHECK(SequenceSpec::arithmetic(2, 0).count_in_interval(0, 10) == 5);
    CHECK(throws_code(ErrorCode::range_error,
                      [] { SequenceSpec::power(2).count_in_interval(10, 10); }));

    // Additivity over adjacent intervals.
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(0.0, 1e5);
    for (int i = 0; i < 200; ++i) {
        double a = dist(rng), b = dist(rng), c = dist(rng);
        if (a > b) std::swap(a, b);
        if (b > c) std::swap(b, c);
        if (a > b) std::swap(a, b);
        if (!(a < b) || !(b < c)) continue;
        CHECK(fd1.count_in_interval(a, b) + fd1.count_in_interval(b, c) ==
              fd1.count_in_interval(a, c));
    }
}

TEST_CASE("interpolant: breakpoints and midpoints") {
    CHECK(SequenceSpec::arithmetic(2, 0).interpolant(3.5) == 7.0);
    CHECK(SequenceSpec::perturbed(1.5, bmd::PsiKind::alternating).interpolant(1.5) == 3.0);
    for (const auto& spec : {SequenceSpec::arithmetic(0.5, 3), SequenceSpec::first_digit(3, 10),
                             SequenceSpec::power(2)}) {
        for (std::int64_t k = 1; k <= 50; ++k) CHECK(spec.interpolant(k) == spec.term(k));
    }
}

TEST_CASE("interpolant_inverse: worked values and floor identity") {
    CHECK(SequenceSpec::arithmetic(2, 0).interpolant_inverse(7) == 3.5);
    CHECK(SequenceSpec::perturbed(1.5, bmd::PsiKind::alternating).interpolant_inverse(3) == 1.5);
    const auto fd1 = SequenceSpec::first_digit(1, 10);
    CHECK(std::floor(fd1.interpolant_inverse(199)) == 111.0);
    CHECK(throws_code(ErrorCode::range_error, [&] { fd1.interpolant_inverse(0.5); }));

    std::mt19937_64 rng(13);
    for (const auto& spec :
         {SequenceSpec::arithmetic(3, 2), fd1, SequenceSpec::power(2), SequenceSpec::log_power(2),
          SequenceSpec::perturbed(2.0, bmd::PsiKind::sine)}) {
        std::uniform_real_distribution<double> dist(spec.term(1), 1e6);
        for (int i = 0; i < 1000; ++i) {
            const double t = dist(rng);
            REQUIRE(static_cast<std::int64_t>(std::floor(spec.interpolant_inverse(t))) ==
                    spec.counting(t));
        }
    }
}

TEST_CASE("strict increase and unboundedness at finite horizon") {
    for (const auto& spec :
         {SequenceSpec::arithmetic(0.25, 0), SequenceSpec::first_digit(5, 10),
          SequenceSpec::power(2), SequenceSpec::log_power(3),
          SequenceSpec::perturbed(1.5, bmd::PsiKind::alternating),
          SequenceSpec::perturbed(2.0, bmd::PsiKind::sine),
          SequenceSpec::perturbed(1.0, bmd::PsiKind::table, {0.1, 0.5, 0.3})}) {
        double prev = spec.term(1);
        CHECK(prev > 0);
        for (std::int64_t n = 2; n <= 20000; ++n) {
            const double cur = spec.term(n);
            REQUIRE(cur > prev);
            prev = cur;
        }
        for (const std::int64_t K : {64, 256, 1024, 4096})
            CHECK(spec.term(2 * K) > spec.term(K) + 1.0);
    }
}

TEST_CASE("parse: grammar cases") {
    const auto ap = SequenceSpec::parse("ap:c=3,a=1");
    CHECK(ap.render() == "ap:c=3,a=1");
    CHECK(ap.term(1) == 4.0);

    CHECK(SequenceSpec::parse("ap:c=3").render() == "ap:c=3,a=0");
    CHECK(SequenceSpec::parse("firstdigit:p=1").render() == "firstdigit:p=1,base=10");
    CHECK(SequenceSpec::parse("perturbed:ell=2,psi=sin").render() == "perturbed:ell=2,psi=sin");
    CHECK(SequenceSpec::parse("perturbed:ell=1.5,psi=alt").term(2) == 4.0);
    CHECK(SequenceSpec::parse("power:p=2").term(4) == 16.0);
    CHECK(SequenceSpec::parse("logpower:p=2").render() == "logpower:p=2");
    CHECK(SequenceSpec::parse("perturbed:ell=1,psi=table,values=0.1;0.5;0.3").render() ==
          "perturbed:ell=1,psi=table,values=0.1;0.5;0.3");

    // Round-trip: render(parse(text)) is canonical and parses back identically.
    for (const char* text : {"ap:c=3,a=1", "ap:a=1,c=3", "firstdigit:base=10,p=4",
                             "perturbed:psi=alt,ell=1.5"}) {
        const auto spec = SequenceSpec::parse(text);
        CHECK(SequenceSpec::parse(spec.render()).render() == spec.render());
    }
}

TEST_CASE("parse: rejections") {
    CHECK(throws_code(ErrorCode::domain_error, [] { SequenceSpec::parse("firstdigit:p=10,base=10"); }));
    CHECK(throws_code(ErrorCode::domain_error, [] { SequenceSpec::parse("ap:c=0"); }));
    CHECK(throws_code(ErrorCode::domain_error, [] { SequenceSpec::parse("ap:c=-1"); }));
    CHECK(throws_code(ErrorCode::domain_error, [] { SequenceSpec::parse("power:p=1"); }));
    CHECK(throws_code(ErrorCode::parse_error, [] { SequenceSpec::parse("nosuch:p=1"); }));
    CHECK(throws_code(ErrorCode::parse_error, [] { SequenceSpec::parse("ap:c=x"); }));
    CHECK(throws_code(ErrorCode::parse_error, [] { SequenceSpec::parse("ap:c=1,c=2"); }));
    CHECK(throws_code(ErrorCode::parse_error, [] { SequenceSpec::parse("ap:c=1,zz=2"); }));
    CHECK(throws_code(ErrorCode::parse_error, [] { SequenceSpec::parse("ap"); }));
    CHECK(throws_code(ErrorCode::domain_error, [] { SequenceSpec::parse("perturbed:ell=1,psi=sin"); }));
    CHECK(throws_code(ErrorCode::domain_error, [] { SequenceSpec::parse("perturbed:ell=0.4,psi=alt"); }));

    // Parse errors carry a position.
    try {
        SequenceSpec::parse("ap:c=1,zz=2");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("position") != std::string::npos);
    }
}

TEST_CASE("file sequences: load, validate, evaluate") {
    const std::string path = "bmd_test_seq.txt";
    {
        std::ofstream out(path);
        out << "# comment line\n1.5\n2.5 # trailing comment\n\n4\n10\n";
    }
    const auto spec = SequenceSpec::parse("file:" + path);
    CHECK(spec.term(1) == 1.5);
    CHECK(spec.term(4) == 10.0);
    CHECK(spec.counting(4) == 3);
    CHECK(spec.render() == "file:" + path);
    CHECK(throws_code(ErrorCode::range_error, [&] { spec.term(5); }));

    {
        std::ofstream out(path);
        out << "3\n2\n";
    }
    CHECK(throws_code(ErrorCode::domain_error, [&] { SequenceSpec::from_file(path); }));
    {
        std::ofstream out(path);
        out << "-1\n2\n";
    }
    CHECK(throws_code(ErrorCode::domain_error, [&] { SequenceSpec::from_file(path); }));
    CHECK(throws_code(ErrorCode::io_error, [] { SequenceSpec::from_file("no_such_file.txt"); }));
    std::remove(path.c_str());
}

TEST_CASE("overflow signalling at the 64-bit-safe horizon") {
    const auto fd = SequenceSpec::first_digit(1, 10);
    CHECK(throws_code(ErrorCode::overflow, [&] { fd.counting(2e15); }));
    CHECK(fd.counting(1e15) > 0);
    CHECK(throws_code(ErrorCode::overflow, [&] { fd.term(4'000'000'000'000'000); }));
    const auto pw = SequenceSpec::power(2);
    CHECK(throws_code(ErrorCode::overflow, [&] { pw.term(40'000'000); }));
    CHECK(pw.term(31'000'000) == 31'000'000.0 * 31'000'000.0);
}

TEST_CASE("integer-valuedness detection") {
    CHECK(SequenceSpec::arithmetic(3, 1).integer_valued());
    CHECK_FALSE(SequenceSpec::arithmetic(2.5, 0).integer_valued());
    CHECK(SequenceSpec::first_digit(4, 10).integer_valued());
    CHECK(SequenceSpec::power(3).integer_valued());
    CHECK_FALSE(SequenceSpec::log_power(2).integer_valued());
    CHECK(SequenceSpec::perturbed(1.5, bmd::PsiKind::alternating).integer_valued());
    CHECK_FALSE(SequenceSpec::perturbed(2.0, bmd::PsiKind::sine).integer_valued());
}

TEST_CASE("first-digit paper-formula discrepancy is exactly one") {
    // The textbook closed form 10/9*(10^n - 1) for F(b_n) omits the one-digit
    // member p; the exact count is (10^{n+1} - 1)/9 + (p-dependent offset 0).
    for (int p = 1; p <= 9; ++p) {
        const auto spec = SequenceSpec::first_digit(p, 10);
        for (int n = 1; n <= 5; ++n) {
            const double bn = (p + 1) * std::pow(10.0, n) - 1.0;
            const auto exact = spec.counting(bn);
            const auto paper = static_cast<std::int64_t>(10.0 / 9.0 * (std::pow(10.0, n) - 1.0) + 0.5);
            CHECK(exact - paper == 1);
        }
    }
}
