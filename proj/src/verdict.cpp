#include "bmd/verdict.hpp"

#include <algorithm>
#include <cmath>

#include "bmd/error.hpp"
#include "bmd/tuning.hpp"

namespace bmd {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::convergent_like: return "convergent-like";
        case Verdict::divergent_like: return "divergent-like";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "?";
}

Verdict verdict_from_points(const std::vector<PartialSumPoint>& pts) {
    if (pts.size() < 4) fail(ErrorCode::invalid_argument, "verdict needs four checkpoints");
    const auto& p = pts[pts.size() - 4];
    const auto& q = pts[pts.size() - 3];
    const auto& r = pts[pts.size() - 2];
    const auto& s = pts[pts.size() - 1];
    const double da = q.value - p.value;
    const double db = r.value - q.value;
    const double dc = s.value - r.value;

    auto step_floor = [](const PartialSumPoint& at) {
        return tuning::divergence_step_coeff *
               std::max(1.0, at.value / std::pow(static_cast<double>(at.n), tuning::divergence_power));
    };
    if (db > step_floor(q) && dc > step_floor(r)) return Verdict::divergent_like;

    if (dc < tuning::convergence_abs_coeff * (1.0 + s.value)) return Verdict::convergent_like;
    if (da > 0.0 && db <= tuning::convergence_decay_ratio * da &&
        dc <= tuning::convergence_decay_ratio * db)
        return Verdict::convergent_like;
    return Verdict::inconclusive;
}

DoublingEvidence doubling_verdict(const std::function<double(std::int64_t)>& sum_to,
                                  std::int64_t max_n) {
    if (max_n < 8) fail(ErrorCode::range_error, "verdict horizon must be >= 8");
    DoublingEvidence ev;
    for (const std::int64_t n : {max_n / 8, max_n / 4, max_n / 2, max_n})
        ev.sums.push_back({n, sum_to(n)});
    for (std::size_t i = 1; i < ev.sums.size(); ++i)
        ev.increments.push_back(ev.sums[i].value - ev.sums[i - 1].value);
    ev.verdict = verdict_from_points(ev.sums);
    return ev;
}

}  // namespace bmd
