#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bmd/cert.hpp"
#include "bmd/intervals.hpp"
#include "bmd/sequence.hpp"
#include "bmd/tuning.hpp"

namespace bmd {

// Detected period p and gap limits a_0..a_{p-1} of the subsequence gaps
// lambda_{kp+j+1} - lambda_{kp+j}; predicts d = b = p / sum a_j.
struct GapProfile {
    std::int64_t period = 1;
    std::vector<double> gap_limits;          // tail means per residue class
    double residual = 0.0;                   // max tail oscillation over classes
    double mean_gap = 0.0;                   // sum a_j / p
    double tolerance = 0.0;                  // residual tolerance that was applied
    std::optional<double> predicted_density; // nullopt when sum a_j == 0
    bool psi_difference_vanishes = true;     // diagnostic: lambda_{n+p}-lambda_n stabilizes
};

// Smallest p <= p_max whose residue-class gaps stabilize; throws no-profile.
GapProfile detect_gap_profile(const SequenceSpec& spec, int p_max = tuning::default_p_max,
                              std::int64_t horizon = tuning::default_detect_horizon);

// One named check with its evidence; `applicable == false` never fails a run.
struct LawReport {
    std::string law;
    std::string spec;  // rendered spec, or "-" for synthetic checks
    bool applicable = true;
    bool pass = true;
    double observed = 0.0;
    double tolerance = 0.0;
    std::string detail;
    std::vector<std::pair<std::string, double>> evidence;
};

// |lambda_n/n - mean_gap| on tail checkpoints.
LawReport cesaro_check(const SequenceSpec& spec, const GapProfile& profile, std::int64_t horizon,
                       double tolerance = 1e-2);

// Floor-ratio bound |(floor(y)-floor(x))/(y-x) - 1| <= 2/(y-x-1) along two
// streams with y_n - x_n -> infinity.
LawReport floor_ratio_check(const std::function<double(std::int64_t)>& x,
                            const std::function<double(std::int64_t)>& y, std::int64_t N);

// Regular variation of the interpolant: (i) interpolant(x)/x -> ell,
// (ii) interpolant(t x)/interpolant(x) -> t, (iii) difference quotients -> ell.
LawReport regvar_check(const SequenceSpec& spec, std::span<const double> t_values,
                       std::span<const double> x_grid, std::optional<double> ell = std::nullopt,
                       double tolerance = 1e-2);

// Composes gap profile -> predicted density, cross-checked against both
// density methods, the interval lower bound, and the series upper bound.
struct Theorem52Result {
    GapProfile profile;
    double predicted = 0.0;
    double counting_lower = 0.0, counting_upper = 0.0;
    double index_lower = 0.0, index_upper = 0.0;
    double interval_lower = 0.0;
    double upper_certificate = 0.0;
    bool upper_convergent = false;
    double max_deviation = 0.0;
    bool pass = false;
};

Theorem52Result theorem52_pipeline(const SequenceSpec& spec);
LawReport theorem52_report(const SequenceSpec& spec);

// Upper density <= certified upper bound + tol, interval evidence >= lower
// density - tol. Skipped (inapplicable) when no certificate exists.
LawReport inequality41_check(const SequenceSpec& spec);

// Integer sequences: best certificate <= 1 + slack, every ell_I ratio within
// its exact combinatorial bound 1 + 1/|I_n|.
LawReport integer_bound_check(const SequenceSpec& spec);

// The full named suite for one spec (or the synthetic suite when nullopt),
// optionally filtered by law-name substring. Deterministic given the seed.
// Recognized tolerance overrides: "cesaro", "regvar".
std::vector<LawReport> run_law_suite(const std::optional<SequenceSpec>& spec,
                                     const std::string& only = "", std::uint64_t seed = 12345,
                                     const std::map<std::string, double>& tolerance = {});

bool all_laws_pass(const std::vector<LawReport>& reports);

// Built-in roster used by the no-spec law suite and the consistency checks.
std::vector<SequenceSpec> builtin_roster();

}  // namespace bmd
