#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bmd/rational.hpp"
#include "bmd/sequence.hpp"
#include "bmd/tuning.hpp"
#include "bmd/verdict.hpp"

namespace bmd {

// Witness index constructions n_k for the series sum |1/lambda_k - a/n_k|.
struct WitnessIndices {
    enum class Kind { identity, shifted_floor, gap_floor, custom };

    Kind kind = Kind::identity;
    double ell = 0.0;  // shifted_floor / gap_floor
    double eps = 0.0;  // gap_floor
    std::vector<std::int64_t> custom;

    std::string describe() const;
};

WitnessIndices witness_identity();
WitnessIndices witness_custom(std::vector<std::int64_t> indices);

// n_k = k + floor(psi_k / ell) with psi_k = lambda_k - ell*k. Valid when psi
// is (ultimately) nondecreasing; violations are recorded, not repaired.
WitnessIndices witness_shifted_floor(double ell);

// n_k = floor(lambda_k / (ell - eps)); distinct once gaps exceed ell - eps.
WitnessIndices witness_gap_floor(double ell, double eps);

// Result of generating a witness prefix against a spec.
struct WitnessScan {
    std::vector<std::int64_t> first_violations;  // at most 16 recorded indices
    std::int64_t violation_count = 0;            // shifted_floor: strictness failures
    std::int64_t nonpositive_count = 0;          // indices with n_k < 1
    std::int64_t last_violation = 0;             // 0 when clean
    std::int64_t checked_to = 0;
    bool clean_tail = true;                      // no violation in the last half
};

WitnessScan scan_witness(const SequenceSpec& spec, const WitnessIndices& witness, std::int64_t K);

struct SeriesCheckpoint {
    std::int64_t k = 0;
    double sum = 0.0;
    bool exact_zero = false;  // all terms so far were exactly zero (rational path)
};

struct SeriesCertificate {
    double a = 0.0;                      // candidate density
    std::optional<Rational> a_exact;     // set when the candidate is an exact rational
    WitnessIndices witness;
    std::vector<SeriesCheckpoint> partial_sums;   // at the caller's checkpoints
    std::vector<PartialSumPoint> verdict_points;  // doubling checkpoints used for the verdict
    Verdict verdict = Verdict::inconclusive;
    std::optional<double> implied_upper_bound;    // b(Lambda) <= a, convergent-like only
    std::optional<double> kappa_est;  // liminf |ell + psi_n/n| (when ell known)
    std::optional<double> alpha_est;  // liminf psi_n/n
    std::int64_t skipped_indices = 0;  // gap_floor: early non-distinct k skipped
    std::int64_t distinct_checked_to = 0;
    std::string note;
};

// Partial sums of sum_k |1/lambda_k - a/n_k| at the given checkpoints, with a
// doubling verdict at the largest one. Exact integer arithmetic is used for
// the numerators whenever the sequence is integer-valued, so rational
// cancellation (e.g. a = 1/p on multiples of p) yields exactly zero.
SeriesCertificate series_partial(const SequenceSpec& spec, const Rational& a,
                                 const WitnessIndices& witness,
                                 std::span<const std::int64_t> checkpoints);
SeriesCertificate series_partial(const SequenceSpec& spec, double a,
                                 const WitnessIndices& witness,
                                 std::span<const std::int64_t> checkpoints);

// Tail-window minimum of consecutive gaps, scanned in small dense runs around
// geometric checkpoints.
struct GapDiagnostic {
    double liminf_gap_est = 0.0;
    std::int64_t horizon = 0;
    std::vector<std::pair<std::int64_t, double>> per_checkpoint;  // (k, min gap near k)
};

GapDiagnostic gap_liminf(const SequenceSpec& spec, std::int64_t horizon);

enum class UpperStrategy { automatic, via_gap, via_psi, via_identity };

struct UpperBoundOptions {
    UpperStrategy strategy = UpperStrategy::automatic;
    double eps = 0.0;         // via_gap; 0 = default fraction of the gap liminf
    double ell = 0.0;         // via_psi
    Rational a = Rational::integer(0);  // via_identity
    std::int64_t gap_horizon = tuning::default_gap_horizon;
    std::int64_t series_horizon = tuning::default_series_horizon;
};

struct UpperBoundReport {
    std::optional<SeriesCertificate> best;        // best convergent-like certificate
    std::vector<SeriesCertificate> attempts;      // everything evaluated, in order
    GapDiagnostic gaps;
};

// Gap-floor and shifted-floor upper-bound certificates; throws no-certificate
// when the gap liminf estimate is below the zero threshold (b possibly
// infinite).
UpperBoundReport bm_upper_bound(const SequenceSpec& spec, const UpperBoundOptions& options = {});

// Partial sums of sum 1/lambda_k; convergent-like concludes d = b = 0.
struct OlivierReport {
    std::vector<SeriesCheckpoint> partial_sums;
    std::vector<PartialSumPoint> verdict_points;
    Verdict verdict = Verdict::inconclusive;
    bool concludes_zero_density = false;
    double tail_index_ratio = 0.0;  // k/lambda_k at the largest checkpoint
    std::string conclusion;
};

OlivierReport olivier_check(const SequenceSpec& spec, std::span<const std::int64_t> checkpoints);

// Partial sums of sum |1/lambda_k - 1/(ell*mu_k)|; convergent-like implies
// b(M) = ell * b(Lambda).
struct RescaleReport {
    Rational ell;
    std::vector<SeriesCheckpoint> partial_sums;
    std::vector<PartialSumPoint> verdict_points;
    Verdict verdict = Verdict::inconclusive;
    std::optional<std::string> implied_relation;
};

RescaleReport rescale_series(const SequenceSpec& lambda, const SequenceSpec& mu, const Rational& ell,
                             std::span<const std::int64_t> checkpoints);

struct EllScanReport {
    std::vector<RescaleReport> per_ell;
    std::vector<Rational> convergent;   // expected singleton
    bool unique = true;                 // false flags a theorem-precondition violation
    std::optional<Rational> sigma_proxy, tau_proxy;  // min/max of the convergent set
};

EllScanReport ell_unique_scan(const SequenceSpec& lambda, const SequenceSpec& mu,
                              std::span<const Rational> grid,
                              std::span<const std::int64_t> checkpoints);

// sum |1/lambda_k - ell/k|: convergent-like reports ell = b(Lambda)
// (finite-scale evidence).
SeriesCertificate harmonic_witness_check(const SequenceSpec& spec, const Rational& ell,
                                         std::span<const std::int64_t> checkpoints);

// Default doubling checkpoints {K/8, K/4, K/2, K}.
std::vector<std::int64_t> default_checkpoints(std::int64_t max_k = tuning::default_series_horizon);

}  // namespace bmd
