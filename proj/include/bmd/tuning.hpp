#pragma once

#include <cstdint>

// Every heuristic constant used by the estimators and verdicts lives here and
// is echoed verbatim into each report, so a result can always be re-derived
// from its own output.
namespace bmd::tuning {

// Geometric checkpoint grids: anchored at the horizon, descending by
// grid_ratio, spanning grid_span_decades decades.
inline constexpr double grid_ratio = 1.1;
inline constexpr double grid_span_decades = 2.0;

// Tail window for liminf/limsup estimates, as a fraction of the grid's
// log-span. 0.5 over a two-decade grid means the last value-decade.
inline constexpr double tail_window_default = 0.5;

// Doubling-step verdicts on partial sums S_K. A series is divergent-like when
// the last two doubling increments stay above
//     divergence_step_coeff * max(1, S_K / K^divergence_power),
// and convergent-like when the last increment is absolutely negligible or the
// increments decay geometrically (ratio <= convergence_decay_ratio twice).
inline constexpr double divergence_step_coeff = 0.1;
inline constexpr double divergence_power = 0.1;
inline constexpr double convergence_abs_coeff = 1e-6;
inline constexpr double convergence_decay_ratio = 0.75;

// Gap-based upper bounds: below gap_zero_threshold the gap liminf is treated
// as zero (no certificate, b possibly infinite); epsilon defaults to
// via_gap_eps_fraction of the estimated gap liminf.
inline constexpr double gap_zero_threshold = 1e-6;
inline constexpr double via_gap_eps_fraction = 0.1;

// Shifted-floor witnesses are gated on kappa = liminf |ell + psi_n/n|.
inline constexpr double kappa_gate = 1e-3;
// The auto slope estimate is shrunk by this factor so estimation noise can
// only push psi_n = lambda_n - ell*n upward (keeping the witness increasing).
inline constexpr double slope_shrink = 1e-9;

// Exact 64-bit integer arithmetic is guaranteed up to this horizon; integer
// families signal overflow past it.
inline constexpr std::int64_t int64_safe_horizon = 1'000'000'000'000'000;

// Defaults for the analyses (all CLI-overridable).
inline constexpr std::int64_t default_horizon = 1'000'000;
inline constexpr std::int64_t default_series_horizon = 100'000;
inline constexpr std::int64_t default_gap_horizon = 1'000'000;
inline constexpr std::int64_t default_interval_terms = 30;
inline constexpr std::int64_t default_detect_horizon = 10'000;
inline constexpr int default_p_max = 12;

// Gap-profile residual tolerances: tight when the gap subsequences are exact
// (rational families), loose for floating perturbations.
inline constexpr double gap_profile_tol_exact = 1e-6;
inline constexpr double gap_profile_tol_loose = 1e-2;

// Cross-estimator agreement tolerance used by the composed law checks.
inline constexpr double agreement_tolerance = 0.05;

// Significant digits used when serializing numbers into reports.
inline constexpr int report_sig_digits = 12;

inline constexpr std::int64_t monotone_validation_horizon = 1'000'000;

}  // namespace bmd::tuning
