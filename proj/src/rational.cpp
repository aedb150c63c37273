#include "bmd/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace bmd {

Rational parse_rational(const std::string& text) {
    if (text.empty()) fail(ErrorCode::parse_error, "empty rational");
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        errno = 0;
        char* end = nullptr;
        const long long num = std::strtoll(text.c_str(), &end, 10);
        if (errno != 0 || end != text.c_str() + slash)
            fail(ErrorCode::parse_error, "bad rational numerator in '" + text + "'");
        const long long den = std::strtoll(text.c_str() + slash + 1, &end, 10);
        if (errno != 0 || *end != '\0' || den == 0)
            fail(ErrorCode::parse_error, "bad rational denominator in '" + text + "'");
        return Rational(num, den);
    }

    // Integer or plain decimal: shift the point out, e.g. "0.045" -> 45/1000.
    std::int64_t num = 0;
    std::int64_t den = 1;
    bool neg = false;
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg = text[i++] == '-';
    bool any_digit = false;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '.') {
            if (seen_point) fail(ErrorCode::parse_error, "bad decimal '" + text + "'");
            seen_point = true;
            continue;
        }
        if (!std::isdigit(static_cast<unsigned char>(c)))
            fail(ErrorCode::parse_error, "bad rational '" + text + "'");
        if (num > (INT64_MAX - 9) / 10 || (seen_point && den > INT64_MAX / 10))
            fail(ErrorCode::range_error, "rational '" + text + "' out of 64-bit range");
        num = num * 10 + (c - '0');
        if (seen_point) den *= 10;
        any_digit = true;
    }
    if (!any_digit) fail(ErrorCode::parse_error, "bad rational '" + text + "'");
    return Rational(neg ? -num : num, den);
}

std::optional<Rational> rational_from_double(double x, std::int64_t max_den) {
    if (!std::isfinite(x)) return std::nullopt;
    for (std::int64_t den = 1; den <= max_den; den *= 10) {
        const double scaled = x * static_cast<double>(den);
        const double rounded = std::nearbyint(scaled);
        if (std::abs(rounded) > 9.0e15) return std::nullopt;
        if (scaled == rounded) {
            Rational r(static_cast<std::int64_t>(rounded), den);
            if (r.value() == x) return r;
        }
    }
    return std::nullopt;
}

}  // namespace bmd
