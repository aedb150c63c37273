#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bmd/sequence.hpp"
#include "bmd/tuning.hpp"
#include "bmd/verdict.hpp"

namespace bmd {

// A system of intervals (a_n, b_n], n >= 1, with a_n < b_n <= a_{n+1} and
// a_n -> infinity. Generators are closed-form so prefixes of any length can
// be validated cheaply.
class IntervalSystem {
public:
    // ((s*r^n, s*r^{n+1}]). Always substantial with limsup b/a = r > 1.
    static IntervalSystem geometric(double ratio, double scale = 1.0);

    // The first-digit block system ((p*B^n, (p+1)*B^n - 1]).
    static IntervalSystem first_digit_blocks(int digit, int base = 10);

    // Adjacent decade tails (((p+1)*B^n - 1, (p+1)*B^{n+1} - 1]).
    static IntervalSystem decade_tail(int digit, int base = 10);

    // Any closed-form generator, e.g. the unit system ((n, n+1]).
    static IntervalSystem custom(std::string name,
                                 std::function<std::pair<double, double>(std::int64_t)> generator);

    // Grammar: geometric:r=2,s=1 | firstdigit:p=1[,base=10] | decade:p=1[,base=10]
    static IntervalSystem parse(const std::string& text);
    std::string render() const { return name_; }

    std::pair<double, double> interval(std::int64_t n) const;

    // Largest prefix length with endpoints inside the 64-bit-safe horizon.
    std::int64_t max_terms() const;

    // Checks a_n < b_n <= a_{n+1} over the prefix; throws invalid-system.
    void validate_prefix(std::int64_t N) const;

private:
    std::function<std::pair<double, double>(std::int64_t)> generator_;
    std::string name_;
};

// Short/long and substantial classification evidence for a prefix.
struct SystemClass {
    std::vector<PartialSumPoint> short_long_partial;   // sum |I|^2/(1+dist^2)
    std::vector<PartialSumPoint> substantial_partial;  // sum (b/a - 1)^2
    Verdict short_long_verdict = Verdict::inconclusive;   // divergent-like = long
    Verdict substantial_verdict = Verdict::inconclusive;  // divergent-like = substantial
    double ratio_limsup_est = 0.0;  // max b_n/a_n over the tail half
    bool in_c_gt1 = false;          // substantial and limsup b/a > 1
};

SystemClass classify(const IntervalSystem& system, std::int64_t N);

// Per-interval counting ratios (F(b_n)-F(a_n))/(b_n-a_n) and their
// tail-window infimum: the finite-scale ell_I of the system.
struct EllEstimate {
    std::vector<std::pair<std::int64_t, double>> per_n;
    double liminf_est = 0.0;
    std::int64_t terms_used = 0;
};

EllEstimate ell_estimate(const IntervalSystem& system, const SequenceSpec& spec, std::int64_t N);

struct LowerBoundEvaluation {
    std::string system;
    double value = 0.0;
};

// Finite-scale lower-bound evidence for the BM density: best tail-window
// ell_I over the supplied systems.
struct LowerBoundResult {
    double best = 0.0;
    std::string witness_system;
    std::vector<LowerBoundEvaluation> evaluated;
};

LowerBoundResult bm_lower_bound(const SequenceSpec& spec, std::span<const IntervalSystem> systems,
                                std::int64_t N);

// Exhaustive grid search over geometric systems; first-in-grid tie-break.
struct GridSearchResult {
    double best = 0.0;
    double ratio = 0.0;
    double scale = 0.0;
    std::vector<LowerBoundEvaluation> evaluated;
};

GridSearchResult search_lower_bound(const SequenceSpec& spec, std::span<const double> ratio_grid,
                                    std::span<const double> scale_grid, std::int64_t N);

// Default geometric search grids used by certify and the law harness.
std::span<const double> default_ratio_grid();
std::span<const double> default_scale_grid();

}  // namespace bmd
