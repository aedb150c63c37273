#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace bmd {

enum class Verdict { convergent_like, divergent_like, inconclusive };

const char* verdict_name(Verdict v);

struct PartialSumPoint {
    std::int64_t n = 0;
    double value = 0.0;
};

// Doubling-step verdict evidence evaluated at {K/8, K/4, K/2, K}.
struct DoublingEvidence {
    std::vector<PartialSumPoint> sums;       // the four doubling checkpoints
    std::vector<double> increments;          // S(2K) - S(K), three of them
    Verdict verdict = Verdict::inconclusive;
};

// Classifies a nonnegative-term series by its increments over doublings:
// divergent-like when both late increments stay above the divergence step
// floor, convergent-like when the last increment is absolutely negligible or
// the increments decay geometrically. `sum_to` must return the partial sum
// S_n and be evaluated at most at max_n.
DoublingEvidence doubling_verdict(const std::function<double(std::int64_t)>& sum_to,
                                  std::int64_t max_n);

// Same rule applied to four precomputed checkpoints (ascending n).
Verdict verdict_from_points(const std::vector<PartialSumPoint>& pts);

}  // namespace bmd
