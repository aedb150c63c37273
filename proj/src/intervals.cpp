#include "bmd/intervals.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "bmd/error.hpp"

namespace bmd {
namespace {

constexpr double kSafe = static_cast<double>(tuning::int64_safe_horizon);

double ipow_d(double b, std::int64_t e) {
    double v = 1.0;
    for (std::int64_t i = 0; i < e; ++i) v *= b;
    return v;
}

}  // namespace

IntervalSystem IntervalSystem::custom(
    std::string name, std::function<std::pair<double, double>(std::int64_t)> generator) {
    IntervalSystem s;
    s.name_ = std::move(name);
    s.generator_ = std::move(generator);
    return s;
}

IntervalSystem IntervalSystem::geometric(double ratio, double scale) {
    if (!(ratio > 1.0)) fail(ErrorCode::domain_error, "geometric system requires r > 1");
    if (!(scale > 0.0)) fail(ErrorCode::domain_error, "geometric system requires s > 0");
    char buf[96];
    std::snprintf(buf, sizeof(buf), "geometric:r=%.12g,s=%.12g", ratio, scale);
    return custom(buf, [ratio, scale](std::int64_t n) -> std::pair<double, double> {
        return {scale * ipow_d(ratio, n), scale * ipow_d(ratio, n + 1)};
    });
}

IntervalSystem IntervalSystem::first_digit_blocks(int digit, int base) {
    if (base < 2 || digit < 1 || digit >= base)
        fail(ErrorCode::domain_error, "firstdigit system requires 1 <= p <= base-1");
    const std::string name = "firstdigit:p=" + std::to_string(digit) +
                             (base == 10 ? std::string() : ",base=" + std::to_string(base));
    return custom(name, [digit, base](std::int64_t n) -> std::pair<double, double> {
        const double block = ipow_d(static_cast<double>(base), n);
        return {digit * block, (digit + 1) * block - 1.0};
    });
}

IntervalSystem IntervalSystem::decade_tail(int digit, int base) {
    if (base < 2 || digit < 1 || digit >= base)
        fail(ErrorCode::domain_error, "decade system requires 1 <= p <= base-1");
    const std::string name = "decade:p=" + std::to_string(digit) +
                             (base == 10 ? std::string() : ",base=" + std::to_string(base));
    return custom(name, [digit, base](std::int64_t n) -> std::pair<double, double> {
        const double block = ipow_d(static_cast<double>(base), n);
        return {(digit + 1) * block - 1.0, (digit + 1) * block * base - 1.0};
    });
}

IntervalSystem IntervalSystem::parse(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        fail(ErrorCode::parse_error, "interval system must look like 'kind:key=value,...'");
    const std::string kind = text.substr(0, colon);
    double r = 0, s = 1;
    long p = 0, base = 10;
    bool have_r = false, have_p = false;
    std::size_t pos = colon + 1;
    while (pos < text.size()) {
        auto next = text.find(',', pos);
        if (next == std::string::npos) next = text.size();
        const std::string item = text.substr(pos, next - pos);
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::parse_error, "interval system: expected key=value at '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        auto as_double = [&](double& out) {
            const auto res = std::from_chars(val.data(), val.data() + val.size(), out);
            if (res.ec != std::errc() || res.ptr != val.data() + val.size())
                fail(ErrorCode::parse_error, "interval system: bad number '" + val + "'");
        };
        if (key == "r") { as_double(r); have_r = true; }
        else if (key == "s") { as_double(s); }
        else if (key == "p") { double d; as_double(d); p = static_cast<long>(d); have_p = true; }
        else if (key == "base") { double d; as_double(d); base = static_cast<long>(d); }
        else fail(ErrorCode::parse_error, "interval system: unknown key '" + key + "'");
        pos = next + 1;
    }
    if (kind == "geometric") {
        if (!have_r) fail(ErrorCode::parse_error, "geometric system requires r=");
        return geometric(r, s);
    }
    if (kind == "firstdigit") {
        if (!have_p) fail(ErrorCode::parse_error, "firstdigit system requires p=");
        return first_digit_blocks(static_cast<int>(p), static_cast<int>(base));
    }
    if (kind == "decade") {
        if (!have_p) fail(ErrorCode::parse_error, "decade system requires p=");
        return decade_tail(static_cast<int>(p), static_cast<int>(base));
    }
    fail(ErrorCode::parse_error, "unknown interval system kind '" + kind + "'");
}

std::pair<double, double> IntervalSystem::interval(std::int64_t n) const {
    if (n < 1) fail(ErrorCode::range_error, "interval index must be >= 1");
    if (!generator_) fail(ErrorCode::invalid_argument, "empty interval system");
    return generator_(n);
}

std::int64_t IntervalSystem::max_terms() const {
    std::int64_t n = 0;
    while (n < 4000) {
        const auto [a, b] = interval(n + 1);
        (void)a;
        if (b > kSafe) break;
        ++n;
    }
    return n;
}

void IntervalSystem::validate_prefix(std::int64_t N) const {
    double prev_b = 0.0;
    for (std::int64_t n = 1; n <= N; ++n) {
        const auto [a, b] = interval(n);
        if (!(a > 0) || !(a < b))
            fail(ErrorCode::invalid_system,
                 render() + ": requires 0 < a_n < b_n at n=" + std::to_string(n));
        if (n > 1 && !(prev_b <= a))
            fail(ErrorCode::invalid_system,
                 render() + ": requires b_n <= a_{n+1} at n=" + std::to_string(n));
        prev_b = b;
    }
}

SystemClass classify(const IntervalSystem& system, std::int64_t N) {
    if (N < 10) fail(ErrorCode::range_error, "classify requires N >= 10");
    N = std::min(N, system.max_terms());
    if (N < 10)
        fail(ErrorCode::range_error, system.render() + ": fewer than 10 intervals fit the safe horizon");
    system.validate_prefix(N);

    SystemClass out;
    const std::array<std::int64_t, 4> marks = {N / 8, N / 4, N / 2, N};
    double short_sum = 0.0, subst_sum = 0.0;
    std::size_t mark = 0;
    double ratio_max = 0.0;
    for (std::int64_t n = 1; n <= N; ++n) {
        const auto [a, b] = system.interval(n);
        const double len = b - a;
        short_sum += len * len / (1.0 + a * a);  // dist(0, (a,b]] = a since a > 0
        const double q = b / a - 1.0;
        subst_sum += q * q;
        if (n > N / 2) ratio_max = std::max(ratio_max, b / a);
        if (mark < marks.size() && n == marks[mark]) {
            out.short_long_partial.push_back({n, short_sum});
            out.substantial_partial.push_back({n, subst_sum});
            ++mark;
        }
    }
    out.short_long_verdict = verdict_from_points(out.short_long_partial);
    out.substantial_verdict = verdict_from_points(out.substantial_partial);
    out.ratio_limsup_est = ratio_max;
    out.in_c_gt1 = out.substantial_verdict == Verdict::divergent_like && ratio_max > 1.0 + 1e-12;
    return out;
}

EllEstimate ell_estimate(const IntervalSystem& system, const SequenceSpec& spec, std::int64_t N) {
    if (N < 4) fail(ErrorCode::range_error, "ell estimate requires N >= 4");
    N = std::min(N, system.max_terms());
    if (N < 4)
        fail(ErrorCode::range_error, system.render() + ": fewer than 4 intervals fit the safe horizon");
    system.validate_prefix(N);

    EllEstimate out;
    out.terms_used = N;
    for (std::int64_t n = 1; n <= N; ++n) {
        const auto [a, b] = system.interval(n);
        const double ratio =
            static_cast<double>(spec.count_in_interval(a, b)) / (b - a);
        out.per_n.emplace_back(n, ratio);
    }
    // liminf estimator: infimum over the last half of generated intervals.
    double inf = out.per_n.back().second;
    for (std::int64_t n = N / 2 + 1; n <= N; ++n)
        inf = std::min(inf, out.per_n[static_cast<std::size_t>(n - 1)].second);
    out.liminf_est = inf;
    return out;
}

LowerBoundResult bm_lower_bound(const SequenceSpec& spec, std::span<const IntervalSystem> systems,
                                std::int64_t N) {
    if (systems.empty()) fail(ErrorCode::invalid_argument, "bm_lower_bound needs systems");
    LowerBoundResult out;
    bool first = true;
    for (const auto& system : systems) {
        const auto ell = ell_estimate(system, spec, N);
        out.evaluated.push_back({system.render(), ell.liminf_est});
        if (first || ell.liminf_est > out.best) {
            out.best = ell.liminf_est;
            out.witness_system = system.render();
            first = false;
        }
    }
    return out;
}

GridSearchResult search_lower_bound(const SequenceSpec& spec, std::span<const double> ratio_grid,
                                    std::span<const double> scale_grid, std::int64_t N) {
    if (ratio_grid.empty() || scale_grid.empty())
        fail(ErrorCode::invalid_argument, "search_lower_bound needs nonempty grids");
    GridSearchResult out;
    bool first = true;
    for (const double r : ratio_grid) {
        for (const double s : scale_grid) {
            const auto system = IntervalSystem::geometric(r, s);
            const auto ell = ell_estimate(system, spec, N);
            out.evaluated.push_back({system.render(), ell.liminf_est});
            if (first || ell.liminf_est > out.best) {
                out.best = ell.liminf_est;
                out.ratio = r;
                out.scale = s;
                first = false;
            }
        }
    }
    return out;
}

std::span<const double> default_ratio_grid() {
    static constexpr std::array<double, 4> grid = {1.5, 2.0, 4.0, 10.0};
    return grid;
}

std::span<const double> default_scale_grid() {
    static constexpr std::array<double, 3> grid = {1.0, 2.0, 3.0};
    return grid;
}

}  // namespace bmd
