#pragma once

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "bmd/cert.hpp"
#include "bmd/density.hpp"
#include "bmd/intervals.hpp"
#include "bmd/laws.hpp"
#include "bmd/sequence.hpp"

namespace bmd {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "bmdensity";
inline constexpr const char* kToolVersion = "0.1.0";

// Rounds to report_sig_digits significant digits so reports are diff-stable.
double report_round(double v);

// Options shared by the report drivers; parsed from the C API options JSON.
struct RunOptions {
    std::int64_t horizon = tuning::default_horizon;
    std::int64_t series_horizon = tuning::default_series_horizon;
    std::int64_t gap_horizon = tuning::default_gap_horizon;
    std::int64_t interval_terms = tuning::default_interval_terms;
    std::uint64_t seed = 12345;
    std::string only;                               // laws filter
    std::vector<std::int64_t> checkpoints;          // series/olivier; empty = doubling default
    std::map<std::string, double> tolerance;        // named overrides, each in (0,1)

    static RunOptions from_json_text(const char* text);  // nullptr/"" = defaults
    ordered_json to_json() const;
};

ordered_json constants_json();
ordered_json envelope(const std::string& command, const RunOptions& options,
                      const std::optional<std::string>& spec_text, ordered_json results);

ordered_json to_json(const DensityEstimate& est);
ordered_json to_json(const EquivalenceReport& rep);
ordered_json to_json(const SystemClass& cls);
ordered_json to_json(const EllEstimate& est);
ordered_json to_json(const SeriesCertificate& cert);
ordered_json to_json(const GapDiagnostic& gaps);
ordered_json to_json(const LawReport& rep);

// Full per-command result documents (the C API returns their envelopes).
ordered_json analyze_report(const SequenceSpec& spec, const RunOptions& options);
ordered_json certify_report(const SequenceSpec& spec, const RunOptions& options);
ordered_json intervals_report(const SequenceSpec& spec, const std::string& system_text,
                              const RunOptions& options);
ordered_json series_report(const SequenceSpec& spec, const std::string& a_text,
                           const std::string& witness_text, const RunOptions& options);
ordered_json laws_report(const std::optional<SequenceSpec>& spec, const RunOptions& options);
ordered_json rescale_scan_report(const SequenceSpec& lambda, const SequenceSpec& mu,
                                 std::span<const Rational> grid, const RunOptions& options);

// Witness grammar: identity | shifted:ell=X | gap:ell=X,eps=Y | custom:n1;n2;...
WitnessIndices parse_witness(const std::string& text);

// Semicolon-separated rationals, e.g. "1/2;2/3;0.7".
std::vector<Rational> parse_rational_grid(const std::string& text);

}  // namespace bmd
