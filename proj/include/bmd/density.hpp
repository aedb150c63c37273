#pragma once

#include <cstdint>
#include <vector>

#include "bmd/sequence.hpp"
#include "bmd/tuning.hpp"

namespace bmd {

enum class DensityMethod { counting, index };

struct DensityCheckpoint {
    std::int64_t n = 0;   // grid point: n for F(n)/n, k for k/lambda_k
    double ratio = 0.0;
};

// Finite-horizon liminf/limsup estimate: checkpoints on a geometric grid over
// the last grid_span_decades decades before the horizon, inf/sup taken over
// the tail window (the last tail_window fraction of the grid's log-span).
struct DensityEstimate {
    DensityMethod method = DensityMethod::counting;
    std::int64_t horizon = 0;
    double lower_est = 0.0;
    double upper_est = 0.0;
    double tail_window = tuning::tail_window_default;
    std::size_t tail_begin = 0;  // index of the first tail checkpoint
    std::vector<DensityCheckpoint> checkpoints;
    bool horizon_clamped = false;  // file prefixes clamp to their last term
};

DensityEstimate density_by_counting(const SequenceSpec& spec, std::int64_t horizon,
                                    double tail_window = tuning::tail_window_default);

DensityEstimate density_by_index(const SequenceSpec& spec, std::int64_t max_k,
                                 double tail_window = tuning::tail_window_default);

struct EquivalenceReport {
    DensityEstimate by_counting;
    DensityEstimate by_index;
    double lower_discrepancy = 0.0;
    double upper_discrepancy = 0.0;
    // Engineering tolerance hint ~ max(1/lambda_tail, 1/n_tail) + oscillation
    // allowance; reported, never asserted by the library itself.
    double tolerance_hint = 0.0;
};

EquivalenceReport check_equivalence(const SequenceSpec& spec, std::int64_t horizon);

// Shared helper: descending geometric grid anchored at hi (ratio 1.1), two
// decades deep, returned ascending and deduplicated.
std::vector<std::int64_t> geometric_grid(std::int64_t hi, double span_decades = tuning::grid_span_decades,
                                         double ratio = tuning::grid_ratio);

}  // namespace bmd
