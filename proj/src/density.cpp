#include "bmd/density.hpp"

#include <algorithm>
#include <cmath>

#include "bmd/error.hpp"

namespace bmd {
namespace {

// Extremal sampling for first-digit families. The ratio F(n)/n peaks at block
// ends (p+1)B^m - 1 and bottoms out just before block starts at pB^m - 1;
// the grid is forced through both so the tail sup/inf hit the true
// oscillation extremes.
void insert_first_digit_breakpoints(const FirstDigit& f, std::int64_t lo, std::int64_t hi,
                                    std::vector<std::int64_t>& out) {
    std::int64_t block = 1;
    for (;;) {
        if (f.digit > tuning::int64_safe_horizon / block) break;
        const std::int64_t low_pt = f.digit * block - 1;
        const std::int64_t high_pt =
            (f.digit + 1 <= tuning::int64_safe_horizon / block) ? (f.digit + 1) * block - 1 : -1;
        if (low_pt > hi && (high_pt < 0 || high_pt > hi)) break;
        if (low_pt >= lo && low_pt <= hi) out.push_back(low_pt);
        if (high_pt >= lo && high_pt <= hi) out.push_back(high_pt);
        if (block > tuning::int64_safe_horizon / f.base) break;
        block *= f.base;
    }
}

// Index-side analogue: k/lambda_k peaks at the last index of each block
// (k = T_m = sum of block sizes) and bottoms at T_m + 1.
void insert_first_digit_index_breakpoints(const FirstDigit& f, std::int64_t lo, std::int64_t hi,
                                          std::vector<std::int64_t>& out) {
    std::int64_t block = 1, total = 0;
    for (;;) {
        total += block;
        if (total > hi) break;
        if (total >= lo) out.push_back(total);
        if (total + 1 >= lo && total + 1 <= hi) out.push_back(total + 1);
        if (block > hi / f.base) break;
        block *= f.base;
    }
}

std::size_t tail_begin_index(const std::vector<DensityCheckpoint>& pts, std::int64_t horizon,
                             double tail_window) {
    // Tail = checkpoints with n >= horizon / 10^(span * window).
    const double cutoff =
        static_cast<double>(horizon) /
        std::pow(10.0, tuning::grid_span_decades * std::clamp(tail_window, 0.0, 1.0));
    std::size_t i = 0;
    while (i + 1 < pts.size() && static_cast<double>(pts[i].n) < cutoff) ++i;
    return i;
}

DensityEstimate finalize(DensityMethod method, std::int64_t horizon, double tail_window,
                         std::vector<DensityCheckpoint> pts, bool clamped) {
    DensityEstimate est;
    est.method = method;
    est.horizon = horizon;
    est.tail_window = tail_window;
    est.checkpoints = std::move(pts);
    est.horizon_clamped = clamped;
    est.tail_begin = tail_begin_index(est.checkpoints, horizon, tail_window);
    double lo = est.checkpoints[est.tail_begin].ratio;
    double hi = lo;
    for (std::size_t i = est.tail_begin; i < est.checkpoints.size(); ++i) {
        lo = std::min(lo, est.checkpoints[i].ratio);
        hi = std::max(hi, est.checkpoints[i].ratio);
    }
    est.lower_est = lo;
    est.upper_est = hi;
    return est;
}

}  // namespace

std::vector<std::int64_t> geometric_grid(std::int64_t hi, double span_decades, double ratio) {
    if (hi < 2) fail(ErrorCode::range_error, "grid horizon must be >= 2");
    const double lo = std::max(2.0, static_cast<double>(hi) / std::pow(10.0, span_decades));
    std::vector<std::int64_t> pts;
    double x = static_cast<double>(hi);
    while (x >= lo) {
        pts.push_back(static_cast<std::int64_t>(std::llround(x)));
        x /= ratio;
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

DensityEstimate density_by_counting(const SequenceSpec& spec, std::int64_t horizon,
                                    double tail_window) {
    if (horizon < 100) fail(ErrorCode::range_error, "density horizon must be >= 100");
    bool clamped = false;
    if (const auto cap = spec.max_query(); cap && static_cast<double>(horizon) > *cap) {
        if (spec.is_file()) {
            horizon = static_cast<std::int64_t>(std::floor(*cap));
            clamped = true;
            if (horizon < 100) fail(ErrorCode::range_error, "file prefix too short for density");
        } else {
            fail(ErrorCode::overflow, "density horizon beyond 64-bit-safe horizon");
        }
    }

    auto grid = geometric_grid(horizon);
    if (const auto* f = std::get_if<FirstDigit>(&spec.family()))
        insert_first_digit_breakpoints(*f, grid.front(), horizon, grid);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<DensityCheckpoint> pts;
    pts.reserve(grid.size());
    for (const auto n : grid)
        pts.push_back({n, static_cast<double>(spec.counting(static_cast<double>(n))) /
                              static_cast<double>(n)});
    return finalize(DensityMethod::counting, horizon, tail_window, std::move(pts), clamped);
}

DensityEstimate density_by_index(const SequenceSpec& spec, std::int64_t max_k, double tail_window) {
    if (max_k < 100) fail(ErrorCode::range_error, "density index horizon must be >= 100");
    bool clamped = false;
    if (const auto cap = spec.max_index(); cap && max_k > *cap) {
        if (!spec.is_file()) fail(ErrorCode::overflow, "index horizon beyond evaluable range");
        max_k = *cap;
        clamped = true;
        if (max_k < 100) fail(ErrorCode::range_error, "file prefix too short for density");
    }

    auto grid = geometric_grid(max_k);
    if (const auto* f = std::get_if<FirstDigit>(&spec.family()))
        insert_first_digit_index_breakpoints(*f, grid.front(), max_k, grid);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<DensityCheckpoint> pts;
    pts.reserve(grid.size());
    for (const auto k : grid)
        pts.push_back({k, static_cast<double>(k) / spec.term(k)});
    return finalize(DensityMethod::index, max_k, tail_window, std::move(pts), clamped);
}

EquivalenceReport check_equivalence(const SequenceSpec& spec, std::int64_t horizon) {
    if (horizon < 1000) fail(ErrorCode::range_error, "check_equivalence horizon must be >= 1000");
    EquivalenceReport rep;
    rep.by_counting = density_by_counting(spec, horizon);
    rep.by_index = density_by_index(spec, horizon);
    rep.lower_discrepancy = std::abs(rep.by_counting.lower_est - rep.by_index.lower_est);
    rep.upper_discrepancy = std::abs(rep.by_counting.upper_est - rep.by_index.upper_est);

    const auto& tail_c = rep.by_counting.checkpoints.back();
    const auto& tail_i = rep.by_index.checkpoints.back();
    const double osc_c = rep.by_counting.upper_est - rep.by_counting.lower_est;
    const double osc_i = rep.by_index.upper_est - rep.by_index.lower_est;
    rep.tolerance_hint = std::max(1.0 / static_cast<double>(tail_c.n),
                                  1.0 / spec.term(tail_i.n)) +
                         0.05 * std::max(osc_c, osc_i);
    return rep;
}

}  // namespace bmd
