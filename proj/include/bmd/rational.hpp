#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <string>

#include "bmd/error.hpp"

namespace bmd {

// Exact small rational. Series machinery uses it so that candidates like 1/p
// produce *exactly* zero terms on integer-valued sequences instead of
// accumulating rounding dust.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    static Rational integer(std::int64_t n) { return Rational(n, 1); }

    void normalize() {
        if (den == 0) fail(ErrorCode::domain_error, "rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool is_zero() const { return num == 0; }
    bool is_integer() const { return den == 1; }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const {
        return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
    }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

// Parses "A/B", an integer, or a plain decimal ("0.25" -> 25/100). Decimal
// input stays exact, which is what makes text-level round-trips trustworthy.
Rational parse_rational(const std::string& text);

// Recovers an exact rational from a double that was produced by a short
// decimal literal (at most `max_den`-sized denominator); nullopt otherwise.
std::optional<Rational> rational_from_double(double x, std::int64_t max_den = 1'000'000);

}  // namespace bmd
