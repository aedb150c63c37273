#include "bmd/sequence.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "bmd/tuning.hpp"

namespace bmd {
namespace {

constexpr std::int64_t kSafe = tuning::int64_safe_horizon;

// n^p in exact integers, or -1 once past the safe horizon.
std::int64_t checked_ipow(std::int64_t n, int p) {
    std::int64_t v = 1;
    for (int i = 0; i < p; ++i) {
        if (n != 0 && v > kSafe / n) return -1;
        v *= n;
    }
    return v;
}

double psi_value(const PerturbedLinear& f, std::int64_t n) {
    switch (f.psi) {
        case PsiKind::sine:
            return std::sin(static_cast<double>(n));
        case PsiKind::alternating:
            // (3 + (-1)^n)/4: 1/2 at odd n, 1 at even n.
            return (n % 2 == 0) ? 1.0 : 0.5;
        case PsiKind::table:
            return f.table[static_cast<std::size_t>((n - 1) % static_cast<std::int64_t>(f.table.size()))];
    }
    return 0.0;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

const char* psi_name(PsiKind k) {
    switch (k) {
        case PsiKind::sine: return "sin";
        case PsiKind::alternating: return "alt";
        case PsiKind::table: return "table";
    }
    return "?";
}

}  // namespace

SequenceSpec::SequenceSpec(Family family) : family_(std::move(family)) { validate(); }

SequenceSpec SequenceSpec::arithmetic(double step, double offset) {
    return SequenceSpec(Arithmetic{step, offset});
}

SequenceSpec SequenceSpec::first_digit(int digit, int base) {
    return SequenceSpec(FirstDigit{digit, base});
}

SequenceSpec SequenceSpec::power(int exponent) { return SequenceSpec(Power{exponent}); }

SequenceSpec SequenceSpec::log_power(int exponent) { return SequenceSpec(LogPower{exponent}); }

SequenceSpec SequenceSpec::perturbed(double slope, PsiKind psi, std::vector<double> table) {
    return SequenceSpec(PerturbedLinear{slope, psi, std::move(table)});
}

SequenceSpec SequenceSpec::from_values(std::vector<double> values, std::string label) {
    return SequenceSpec(ExplicitFile{std::move(label), std::move(values)});
}

SequenceSpec SequenceSpec::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io_error, "cannot open sequence file '" + path + "'");
    std::vector<double> values;
    std::string line;
    std::int64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        std::size_t e = line.find_last_not_of(" \t\r");
        const std::string tok = line.substr(b, e - b + 1);
        double v = 0;
        const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
            fail(ErrorCode::parse_error,
                 "bad value '" + tok + "' at line " + std::to_string(lineno) + " of " + path);
        values.push_back(v);
    }
    if (values.empty()) fail(ErrorCode::domain_error, "sequence file '" + path + "' has no values");
    return SequenceSpec(ExplicitFile{path, std::move(values)});
}

void SequenceSpec::validate() {
    if (const auto* f = std::get_if<Arithmetic>(&family_)) {
        if (!(f->step > 0)) fail(ErrorCode::domain_error, "arithmetic step c must be positive");
        if (!(f->offset >= 0)) fail(ErrorCode::domain_error, "arithmetic offset a must be nonnegative");
        integer_valued_ = f->step == std::nearbyint(f->step) && f->offset == std::nearbyint(f->offset);
    } else if (const auto* f = std::get_if<FirstDigit>(&family_)) {
        if (f->base < 2) fail(ErrorCode::domain_error, "firstdigit base must be >= 2");
        if (f->digit < 1 || f->digit >= f->base)
            fail(ErrorCode::domain_error, "firstdigit p must lie in 1..base-1");
        integer_valued_ = true;
    } else if (const auto* f = std::get_if<Power>(&family_)) {
        if (f->exponent < 2) fail(ErrorCode::domain_error, "power exponent must be >= 2");
        integer_valued_ = true;
    } else if (const auto* f = std::get_if<LogPower>(&family_)) {
        if (f->exponent < 2) fail(ErrorCode::domain_error, "logpower exponent must be >= 2");
        integer_valued_ = false;
    } else if (const auto* f = std::get_if<PerturbedLinear>(&family_)) {
        if (!(f->slope > 0)) fail(ErrorCode::domain_error, "perturbed ell must be positive");
        switch (f->psi) {
            case PsiKind::sine:
                // Gaps are ell + 2 sin(1/2) cos(n+1/2) >= ell - 2 sin(1/2); requiring
                // ell >= 2 keeps them above 1. Validated numerically below as well.
                if (f->slope < 2.0)
                    fail(ErrorCode::domain_error, "perturbed sine requires ell >= 2");
                break;
            case PsiKind::alternating:
                if (!(f->slope > 0.5))
                    fail(ErrorCode::domain_error, "perturbed alternating requires ell > 1/2");
                break;
            case PsiKind::table: {
                if (f->table.empty())
                    fail(ErrorCode::domain_error, "perturbed table needs at least one value");
                const std::size_t L = f->table.size();
                for (std::size_t j = 0; j < L; ++j) {
                    const double drop = f->table[j] - f->table[(j + 1) % L];
                    if (!(f->slope > drop))
                        fail(ErrorCode::domain_error,
                             "perturbed table: ell must exceed every cyclic decrement of psi");
                }
                break;
            }
        }
        if (f->psi == PsiKind::sine) {
            double prev = term(1);
            if (!(prev > 0)) fail(ErrorCode::domain_error, "perturbed sequence must stay positive");
            for (std::int64_t n = 2; n <= tuning::monotone_validation_horizon; ++n) {
                const double cur = f->slope * static_cast<double>(n) + psi_value(*f, n);
                if (!(cur > prev))
                    fail(ErrorCode::domain_error,
                         "perturbed sequence not strictly increasing at n=" + std::to_string(n));
                prev = cur;
            }
        } else if (!(term(1) > 0)) {
            fail(ErrorCode::domain_error, "perturbed sequence must stay positive");
        }
        // Integer detection by sampling; exact families (e.g. ell=3/2 with the
        // alternating form) hit integers bit-exactly.
        integer_valued_ = true;
        for (std::int64_t n = 1; n <= 1000 && integer_valued_; ++n) {
            const double v = term(n);
            if (std::abs(v - std::nearbyint(v)) > 1e-9) integer_valued_ = false;
        }
    } else if (const auto* f = std::get_if<ExplicitFile>(&family_)) {
        double prev = 0.0;
        for (std::size_t i = 0; i < f->values.size(); ++i) {
            const double v = f->values[i];
            if (!(v > 0))
                fail(ErrorCode::domain_error,
                     "file sequence value #" + std::to_string(i + 1) + " is not positive");
            if (i > 0 && !(v > prev))
                fail(ErrorCode::domain_error,
                     "file sequence not strictly increasing at entry #" + std::to_string(i + 1));
            prev = v;
        }
        bool ints = true;
        for (std::size_t i = 0; i < f->values.size() && i < 1000; ++i)
            if (f->values[i] != std::nearbyint(f->values[i])) { ints = false; break; }
        integer_valued_ = ints;
    }
}

double SequenceSpec::term(std::int64_t n) const {
    if (n < 1) fail(ErrorCode::range_error, "term index must be >= 1");
    if (const auto* f = std::get_if<Arithmetic>(&family_))
        return f->step * static_cast<double>(n) + f->offset;
    if (const auto* f = std::get_if<FirstDigit>(&family_)) {
        // Blocks [p*B^m, (p+1)*B^m - 1] of size B^m, m = 0, 1, ...
        std::int64_t block = 1;       // B^m
        std::int64_t before = 0;      // terms in blocks < m
        for (;;) {
            if (n <= before + block) {
                const std::int64_t offset = n - before - 1;
                if (f->digit > kSafe / block)
                    fail(ErrorCode::overflow, "firstdigit term beyond 64-bit-safe horizon");
                const std::int64_t start = f->digit * block;
                if (start > kSafe - offset)
                    fail(ErrorCode::overflow, "firstdigit term beyond 64-bit-safe horizon");
                return static_cast<double>(start + offset);
            }
            before += block;
            if (block > kSafe / f->base)
                fail(ErrorCode::overflow, "firstdigit term beyond 64-bit-safe horizon");
            block *= f->base;
        }
    }
    if (const auto* f = std::get_if<Power>(&family_)) {
        const std::int64_t v = checked_ipow(n, f->exponent);
        if (v < 0) fail(ErrorCode::overflow, "power term beyond 64-bit-safe horizon");
        return static_cast<double>(v);
    }
    if (const auto* f = std::get_if<LogPower>(&family_)) {
        const double nn = static_cast<double>(n);
        return std::log(nn + 1.0) * std::pow(nn, f->exponent);
    }
    if (const auto* f = std::get_if<PerturbedLinear>(&family_))
        return f->slope * static_cast<double>(n) + psi_value(*f, n);
    const auto& f = std::get<ExplicitFile>(family_);
    if (n > static_cast<std::int64_t>(f.values.size()))
        fail(ErrorCode::range_error,
             "index " + std::to_string(n) + " out of range for file sequence of length " +
                 std::to_string(f.values.size()));
    return f.values[static_cast<std::size_t>(n - 1)];
}

std::int64_t SequenceSpec::counting(double t) const {
    if (!(t >= 0)) fail(ErrorCode::range_error, "counting requires t >= 0");
    if (t == 0) return 0;

    if (const auto* f = std::get_if<Arithmetic>(&family_)) {
        // Closed form floor((t-a)/c), then locally adjusted so the result is
        // exact under floating evaluation of the terms.
        if (t < f->step + f->offset) return 0;
        std::int64_t k = static_cast<std::int64_t>(std::floor((t - f->offset) / f->step));
        if (k < 0) k = 0;
        while (f->step * static_cast<double>(k + 1) + f->offset <= t) ++k;
        while (k >= 1 && f->step * static_cast<double>(k) + f->offset > t) --k;
        return k;
    }
    if (const auto* f = std::get_if<FirstDigit>(&family_)) {
        if (t > static_cast<double>(kSafe))
            fail(ErrorCode::overflow, "firstdigit counting beyond 64-bit-safe horizon");
        const std::int64_t T = static_cast<std::int64_t>(std::floor(t));
        std::int64_t count = 0;
        std::int64_t block = 1;  // B^m
        for (;;) {
            if (f->digit > kSafe / block) break;  // block start already beyond T <= kSafe
            const std::int64_t start = f->digit * block;
            if (start > T) break;
            const std::int64_t end = start + block - 1;
            count += (T >= end) ? block : (T - start + 1);
            if (block > kSafe / f->base) break;
            block *= f->base;
        }
        return count;
    }
    if (const auto* f = std::get_if<Power>(&family_)) {
        if (t > static_cast<double>(kSafe))
            fail(ErrorCode::overflow, "power counting beyond 64-bit-safe horizon");
        std::int64_t k = static_cast<std::int64_t>(std::floor(std::pow(t, 1.0 / f->exponent)));
        if (k < 0) k = 0;
        while (checked_ipow(k + 1, f->exponent) >= 0 &&
               static_cast<double>(checked_ipow(k + 1, f->exponent)) <= t)
            ++k;
        while (k >= 1 && static_cast<double>(checked_ipow(k, f->exponent)) > t) --k;
        return k;
    }
    if (const auto* f = std::get_if<ExplicitFile>(&family_)) {
        const auto it = std::upper_bound(f->values.begin(), f->values.end(), t);
        return static_cast<std::int64_t>(it - f->values.begin());
    }

    // Generic: binary search on term() (strictly increasing from index 1).
    if (term(1) > t) return 0;
    std::int64_t lo = 1, hi = 2;
    while (term(hi) <= t) {
        lo = hi;
        if (hi > (INT64_MAX / 2)) fail(ErrorCode::overflow, "counting bracket overflow");
        hi *= 2;
    }
    while (lo + 1 < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        (term(mid) <= t ? lo : hi) = mid;
    }
    return lo;
}

std::int64_t SequenceSpec::count_in_interval(double a, double b) const {
    if (!(a >= 0)) fail(ErrorCode::range_error, "interval start must be >= 0");
    if (!(a < b)) fail(ErrorCode::range_error, "invalid-interval: requires a < b");
    return counting(b) - counting(a);
}

double SequenceSpec::interpolant(double x) const {
    if (!(x >= 1)) fail(ErrorCode::range_error, "interpolant requires x >= 1");
    const double fl = std::floor(x);
    const std::int64_t k = static_cast<std::int64_t>(fl);
    const double lk = term(k);
    if (x == fl) return lk;
    return lk + (term(k + 1) - lk) * (x - fl);
}

double SequenceSpec::interpolant_inverse(double y) const {
    const double first = term(1);
    if (!(y >= first))
        fail(ErrorCode::range_error, "interpolant_inverse: y below lambda_1");
    // Largest k with lambda_k <= y, located on term() directly.
    std::int64_t lo = 1, hi = 2;
    const auto limit = max_index();
    auto term_at = [&](std::int64_t n) { return term(n); };
    if (limit) {
        if (y > term_at(*limit)) {
            if (std::holds_alternative<ExplicitFile>(family_))
                fail(ErrorCode::range_error, "interpolant_inverse: y beyond file prefix");
            fail(ErrorCode::overflow, "interpolant_inverse beyond 64-bit-safe horizon");
        }
        hi = *limit;
        if (term_at(hi) <= y) lo = hi;
    } else {
        while (term_at(hi) <= y) {
            lo = hi;
            if (hi > (INT64_MAX / 2)) fail(ErrorCode::overflow, "inverse bracket overflow");
            hi *= 2;
        }
    }
    while (lo + 1 < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        (term_at(mid) <= y ? lo : hi) = mid;
    }
    const double lk = term_at(lo);
    if (y == lk) return static_cast<double>(lo);
    if (limit && lo == *limit)
        fail(ErrorCode::range_error, "interpolant_inverse: y beyond last breakpoint");
    const double lk1 = term_at(lo + 1);
    if (!(lk1 > lk)) fail(ErrorCode::domain_error, "flat-segment: interpolant not invertible here");
    return static_cast<double>(lo) + (y - lk) / (lk1 - lk);
}

std::optional<std::int64_t> SequenceSpec::max_index() const {
    if (const auto* f = std::get_if<ExplicitFile>(&family_))
        return static_cast<std::int64_t>(f->values.size());
    if (const auto* f = std::get_if<FirstDigit>(&family_)) {
        std::int64_t block = 1, count = 0;
        for (;;) {
            if (static_cast<std::int64_t>(f->digit) > kSafe / block) break;
            const std::int64_t start = f->digit * block;
            const std::int64_t room = kSafe - start + 1;
            count += std::min(block, room > 0 ? room : 0);
            if (block > kSafe / f->base) break;
            block *= f->base;
        }
        return count;
    }
    if (const auto* f = std::get_if<Power>(&family_)) {
        std::int64_t k = static_cast<std::int64_t>(
            std::floor(std::pow(static_cast<double>(kSafe), 1.0 / f->exponent)));
        while (checked_ipow(k + 1, f->exponent) > 0) ++k;
        while (k > 1 && checked_ipow(k, f->exponent) < 0) --k;
        return k;
    }
    return std::nullopt;
}

std::optional<double> SequenceSpec::max_query() const {
    if (const auto* f = std::get_if<ExplicitFile>(&family_)) return f->values.back();
    if (std::holds_alternative<FirstDigit>(family_) || std::holds_alternative<Power>(family_))
        return static_cast<double>(kSafe);
    return std::nullopt;
}

// --- spec grammar ---------------------------------------------------------

namespace {

[[noreturn]] void parse_fail(const std::string& text, std::size_t pos, const std::string& what) {
    fail(ErrorCode::parse_error,
         "spec parse error at position " + std::to_string(pos) + ": " + what + " (in '" + text + "')");
}

double parse_double_at(const std::string& text, std::size_t pos, const std::string& value) {
    double v = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size())
        parse_fail(text, pos, "expected a number, got '" + value + "'");
    return v;
}

std::int64_t parse_int_at(const std::string& text, std::size_t pos, const std::string& value) {
    std::int64_t v = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size())
        parse_fail(text, pos, "expected an integer, got '" + value + "'");
    return v;
}

}  // namespace

SequenceSpec SequenceSpec::parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos || colon == 0)
        parse_fail(text, 0, "expected 'family:...'");
    const std::string family = text.substr(0, colon);

    if (family == "file") {
        const std::string path = text.substr(colon + 1);
        if (path.empty()) parse_fail(text, colon + 1, "file spec needs a path");
        return from_file(path);
    }

    // key=value pairs, comma-separated; order-insensitive, duplicates rejected.
    std::map<std::string, std::pair<std::string, std::size_t>> kv;
    std::size_t pos = colon + 1;
    while (pos < text.size()) {
        auto next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        const std::string item = text.substr(pos, next - pos);
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            parse_fail(text, pos, "expected key=value");
        const std::string key = item.substr(0, eq);
        if (kv.count(key)) parse_fail(text, pos, "duplicate key '" + key + "'");
        kv[key] = {item.substr(eq + 1), pos + eq + 1};
        pos = next + 1;
    }
    auto take = [&](const char* key) -> std::optional<std::pair<std::string, std::size_t>> {
        auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        auto v = it->second;
        kv.erase(it);
        return v;
    };
    auto finish = [&] {
        if (!kv.empty())
            parse_fail(text, kv.begin()->second.second, "unknown key '" + kv.begin()->first + "'");
    };

    if (family == "ap") {
        const auto c = take("c");
        if (!c) parse_fail(text, text.size(), "ap requires c=");
        const auto a = take("a");
        finish();
        return arithmetic(parse_double_at(text, c->second, c->first),
                          a ? parse_double_at(text, a->second, a->first) : 0.0);
    }
    if (family == "firstdigit") {
        const auto p = take("p");
        if (!p) parse_fail(text, text.size(), "firstdigit requires p=");
        const auto base = take("base");
        finish();
        return first_digit(static_cast<int>(parse_int_at(text, p->second, p->first)),
                           base ? static_cast<int>(parse_int_at(text, base->second, base->first)) : 10);
    }
    if (family == "power" || family == "logpower") {
        const auto p = take("p");
        if (!p) parse_fail(text, text.size(), family + " requires p=");
        finish();
        const int e = static_cast<int>(parse_int_at(text, p->second, p->first));
        return family == "power" ? power(e) : log_power(e);
    }
    if (family == "perturbed") {
        const auto ell = take("ell");
        if (!ell) parse_fail(text, text.size(), "perturbed requires ell=");
        const auto psi = take("psi");
        if (!psi) parse_fail(text, text.size(), "perturbed requires psi=");
        std::vector<double> table;
        PsiKind kind;
        if (psi->first == "sin") {
            kind = PsiKind::sine;
        } else if (psi->first == "alt") {
            kind = PsiKind::alternating;
        } else if (psi->first == "table") {
            kind = PsiKind::table;
            const auto values = take("values");
            if (!values) parse_fail(text, text.size(), "psi=table requires values=v1;v2;...");
            std::stringstream ss(values->first);
            std::string tok;
            while (std::getline(ss, tok, ';'))
                table.push_back(parse_double_at(text, values->second, tok));
        } else {
            parse_fail(text, psi->second, "psi must be sin, alt or table");
        }
        finish();
        return perturbed(parse_double_at(text, ell->second, ell->first), kind, std::move(table));
    }
    parse_fail(text, 0, "unknown family '" + family + "'");
}

std::string SequenceSpec::render() const {
    if (const auto* f = std::get_if<Arithmetic>(&family_))
        return "ap:c=" + format_number(f->step) + ",a=" + format_number(f->offset);
    if (const auto* f = std::get_if<FirstDigit>(&family_))
        return "firstdigit:p=" + std::to_string(f->digit) + ",base=" + std::to_string(f->base);
    if (const auto* f = std::get_if<Power>(&family_))
        return "power:p=" + std::to_string(f->exponent);
    if (const auto* f = std::get_if<LogPower>(&family_))
        return "logpower:p=" + std::to_string(f->exponent);
    if (const auto* f = std::get_if<PerturbedLinear>(&family_)) {
        std::string out = "perturbed:ell=" + format_number(f->slope) + ",psi=" + psi_name(f->psi);
        if (f->psi == PsiKind::table) {
            out += ",values=";
            for (std::size_t i = 0; i < f->table.size(); ++i) {
                if (i) out += ';';
                out += format_number(f->table[i]);
            }
        }
        return out;
    }
    return "file:" + std::get<ExplicitFile>(family_).path;
}

}  // namespace bmd
