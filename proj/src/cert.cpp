#include "bmd/cert.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "bmd/density.hpp"
#include "bmd/error.hpp"

namespace bmd {
namespace {

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

bool int64_exact(double v) {
    return v == std::nearbyint(v) && std::abs(v) <= 9.0e15;
}

// Witness index for position k, or nullopt when the construction yields no
// usable index there (custom list exhausted).
std::optional<std::int64_t> witness_index(const SequenceSpec& spec, const WitnessIndices& w,
                                          std::int64_t k) {
    switch (w.kind) {
        case WitnessIndices::Kind::identity:
            return k;
        case WitnessIndices::Kind::shifted_floor: {
            const double psi = spec.term(k) - w.ell * static_cast<double>(k);
            return k + static_cast<std::int64_t>(std::floor(psi / w.ell));
        }
        case WitnessIndices::Kind::gap_floor:
            return static_cast<std::int64_t>(std::floor(spec.term(k) / (w.ell - w.eps)));
        case WitnessIndices::Kind::custom:
            if (k > static_cast<std::int64_t>(w.custom.size())) return std::nullopt;
            return w.custom[static_cast<std::size_t>(k - 1)];
    }
    return std::nullopt;
}

std::vector<std::int64_t> merged_sample_points(std::span<const std::int64_t> checkpoints,
                                               std::int64_t max_k) {
    std::vector<std::int64_t> pts(checkpoints.begin(), checkpoints.end());
    for (const std::int64_t n : {max_k / 8, max_k / 4, max_k / 2, max_k})
        pts.push_back(std::max<std::int64_t>(1, n));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.empty() || pts.front() < 1)
        fail(ErrorCode::range_error, "series checkpoints must be >= 1");
    return pts;
}

void attach_psi_diagnostics(const SequenceSpec& spec, double ell, std::int64_t max_k,
                            SeriesCertificate& cert) {
    double kappa = std::numeric_limits<double>::infinity();
    double alpha = std::numeric_limits<double>::infinity();
    for (const std::int64_t k : geometric_grid(max_k)) {
        if (k * 10 < max_k) continue;  // tail decade only
        const double psi_over = (spec.term(k) - ell * static_cast<double>(k)) / static_cast<double>(k);
        kappa = std::min(kappa, std::abs(ell + psi_over));
        alpha = std::min(alpha, psi_over);
    }
    cert.kappa_est = kappa;
    cert.alpha_est = alpha;
}

}  // namespace

std::string WitnessIndices::describe() const {
    char buf[96];
    switch (kind) {
        case Kind::identity:
            return "identity";
        case Kind::shifted_floor:
            std::snprintf(buf, sizeof(buf), "shifted:ell=%.12g", ell);
            return buf;
        case Kind::gap_floor:
            std::snprintf(buf, sizeof(buf), "gap:ell=%.12g,eps=%.12g", ell, eps);
            return buf;
        case Kind::custom:
            return "custom[" + std::to_string(custom.size()) + "]";
    }
    return "?";
}

WitnessIndices witness_identity() { return {}; }

WitnessIndices witness_custom(std::vector<std::int64_t> indices) {
    WitnessIndices w;
    w.kind = WitnessIndices::Kind::custom;
    w.custom = std::move(indices);
    return w;
}

WitnessIndices witness_shifted_floor(double ell) {
    if (!(ell > 0)) fail(ErrorCode::domain_error, "shifted-floor witness requires ell > 0");
    WitnessIndices w;
    w.kind = WitnessIndices::Kind::shifted_floor;
    w.ell = ell;
    return w;
}

WitnessIndices witness_gap_floor(double ell, double eps) {
    if (!(ell > 0)) fail(ErrorCode::domain_error, "gap-floor witness requires ell > 0");
    if (!(eps > 0) || !(eps < ell))
        fail(ErrorCode::domain_error, "gap-floor witness requires 0 < eps < ell");
    WitnessIndices w;
    w.kind = WitnessIndices::Kind::gap_floor;
    w.ell = ell;
    w.eps = eps;
    return w;
}

WitnessScan scan_witness(const SequenceSpec& spec, const WitnessIndices& witness, std::int64_t K) {
    if (K < 1) fail(ErrorCode::range_error, "witness scan requires K >= 1");
    WitnessScan scan;
    scan.checked_to = K;
    if (witness.kind == WitnessIndices::Kind::custom) {
        // Custom lists only promise distinctness, not monotonicity.
        std::unordered_set<std::int64_t> seen;
        const std::int64_t limit =
            std::min<std::int64_t>(K, static_cast<std::int64_t>(witness.custom.size()));
        scan.checked_to = limit;
        for (std::int64_t k = 1; k <= limit; ++k) {
            const std::int64_t n = witness.custom[static_cast<std::size_t>(k - 1)];
            const bool bad = n < 1 || !seen.insert(n).second;
            if (n < 1) ++scan.nonpositive_count;
            if (bad) {
                ++scan.violation_count;
                scan.last_violation = k;
                if (scan.first_violations.size() < 16) scan.first_violations.push_back(k);
            }
        }
    } else {
        std::int64_t last = 0;
        for (std::int64_t k = 1; k <= K; ++k) {
            const std::int64_t n = *witness_index(spec, witness, k);
            if (n < 1) ++scan.nonpositive_count;
            if (n < 1 || n <= last) {
                ++scan.violation_count;
                scan.last_violation = k;
                if (scan.first_violations.size() < 16) scan.first_violations.push_back(k);
            } else {
                last = n;
            }
        }
    }
    scan.clean_tail = scan.last_violation <= scan.checked_to / 2;
    return scan;
}

namespace {

SeriesCertificate run_series(const SequenceSpec& spec, double a_value,
                             const std::optional<Rational>& a_exact, const WitnessIndices& witness,
                             std::span<const std::int64_t> checkpoints) {
    if (checkpoints.empty()) fail(ErrorCode::invalid_argument, "series needs checkpoints");
    if (!(a_value >= 0)) fail(ErrorCode::domain_error, "candidate density a must be >= 0");

    SeriesCertificate cert;
    cert.a = a_value;
    cert.a_exact = a_exact;
    cert.witness = witness;

    std::int64_t max_k = *std::max_element(checkpoints.begin(), checkpoints.end());
    if (witness.kind == WitnessIndices::Kind::custom)
        max_k = std::min<std::int64_t>(max_k, static_cast<std::int64_t>(witness.custom.size()));
    if (const auto cap = spec.max_index()) max_k = std::min(max_k, *cap);
    const auto samples = merged_sample_points(checkpoints, max_k);

    // The exact path computes |B*n - A*lambda| in 128-bit integers so rational
    // cancellation is bit-exact; it engages only while terms stay integral.
    const bool exact_candidate = a_exact.has_value() && spec.integer_valued();

    KahanSum sum;
    bool all_zero = true;
    std::int64_t last_n = 0;
    std::int64_t last_skip = 0;
    bool monotone_witness = witness.kind != WitnessIndices::Kind::custom;
    std::unordered_set<std::int64_t> seen_custom;

    std::vector<SeriesCheckpoint> at_samples;
    std::size_t next_sample = 0;
    bool witness_ok = true;

    for (std::int64_t k = 1; k <= max_k && next_sample < samples.size(); ++k) {
        const auto n_opt = witness_index(spec, witness, k);
        if (!n_opt) break;
        const std::int64_t n = *n_opt;
        bool include = true;

        if (monotone_witness) {
            if (n < 1 || n <= last_n) {
                if (witness.kind == WitnessIndices::Kind::gap_floor) {
                    // Early collisions precede the "ultimately distinct" regime;
                    // they are skipped and counted, not summed.
                    ++cert.skipped_indices;
                    last_skip = k;
                    include = false;
                } else if (witness.kind == WitnessIndices::Kind::shifted_floor) {
                    witness_ok = false;
                    if (cert.note.empty())
                        cert.note = "witness violation at k=" + std::to_string(k) +
                                    (n < 1 ? " (nonpositive index)" : " (not increasing)");
                    include = false;
                }
            } else {
                last_n = n;
            }
        } else {
            if (n < 1 || !seen_custom.insert(n).second) {
                witness_ok = false;
                if (cert.note.empty())
                    cert.note = "custom witness not distinct at k=" + std::to_string(k);
                include = false;
            }
        }

        if (include) {
            const double lambda = spec.term(k);
            double term;
            if (exact_candidate && int64_exact(lambda)) {
                const auto L = static_cast<std::int64_t>(std::nearbyint(lambda));
                const __int128 num = static_cast<__int128>(a_exact->den) * n -
                                     static_cast<__int128>(a_exact->num) * L;
                const __int128 mag = num < 0 ? -num : num;
                term = static_cast<double>(mag) /
                       (static_cast<double>(a_exact->den) * lambda * static_cast<double>(n));
                if (mag != 0) all_zero = false;
            } else {
                term = std::abs(1.0 / lambda - a_value / static_cast<double>(n));
                if (term != 0.0) all_zero = false;
            }
            sum.add(term);
        }

        while (next_sample < samples.size() && samples[next_sample] == k) {
            at_samples.push_back({k, sum.sum, all_zero});
            ++next_sample;
        }
    }
    cert.distinct_checked_to = max_k;

    auto sum_at = [&](std::int64_t k) -> SeriesCheckpoint {
        const auto it = std::lower_bound(
            at_samples.begin(), at_samples.end(), k,
            [](const SeriesCheckpoint& c, std::int64_t v) { return c.k < v; });
        if (it != at_samples.end() && it->k == k) return *it;
        // Checkpoint beyond the evaluable range (file prefix / custom list):
        // report the last available sum.
        return at_samples.empty() ? SeriesCheckpoint{k, 0.0, true}
                                  : SeriesCheckpoint{k, at_samples.back().sum, at_samples.back().exact_zero};
    };

    for (const std::int64_t k : checkpoints) cert.partial_sums.push_back(sum_at(k));
    for (const std::int64_t k : {max_k / 8, max_k / 4, max_k / 2, max_k}) {
        const auto c = sum_at(std::max<std::int64_t>(1, k));
        cert.verdict_points.push_back({c.k, c.sum});
    }

    if (last_skip > max_k / 2) {
        witness_ok = false;
        cert.note = "witness collisions persist past k=" + std::to_string(max_k / 2) +
                    " (not ultimately distinct)";
    }
    if (!witness_ok) {
        cert.verdict = Verdict::inconclusive;
        if (cert.note.empty()) cert.note = "witness not distinct";
    } else {
        cert.verdict = verdict_from_points(cert.verdict_points);
        if (cert.verdict == Verdict::convergent_like) cert.implied_upper_bound = a_value;
    }
    if (witness.kind == WitnessIndices::Kind::gap_floor && cert.skipped_indices > 0 &&
        cert.note.empty())
        cert.note = "skipped " + std::to_string(cert.skipped_indices) +
                    " early non-distinct indices";
    return cert;
}

}  // namespace

SeriesCertificate series_partial(const SequenceSpec& spec, const Rational& a,
                                 const WitnessIndices& witness,
                                 std::span<const std::int64_t> checkpoints) {
    return run_series(spec, a.value(), a, witness, checkpoints);
}

SeriesCertificate series_partial(const SequenceSpec& spec, double a, const WitnessIndices& witness,
                                 std::span<const std::int64_t> checkpoints) {
    return run_series(spec, a, rational_from_double(a), witness, checkpoints);
}

GapDiagnostic gap_liminf(const SequenceSpec& spec, std::int64_t horizon) {
    if (horizon < 10) fail(ErrorCode::range_error, "gap_liminf requires horizon >= 10");
    if (const auto cap = spec.max_index()) horizon = std::min(horizon, *cap);
    if (horizon < 10) fail(ErrorCode::range_error, "sequence too short for gap_liminf");

    GapDiagnostic out;
    out.horizon = horizon;
    constexpr std::int64_t run = 32;  // dense gap run scanned at each checkpoint
    double tail_min = std::numeric_limits<double>::infinity();
    for (const std::int64_t c : geometric_grid(horizon)) {
        const std::int64_t start = std::max<std::int64_t>(1, std::min(c, horizon - run));
        const std::int64_t stop = std::min(horizon - 1, start + run - 1);
        double local = std::numeric_limits<double>::infinity();
        double prev = spec.term(start);
        for (std::int64_t k = start; k <= stop; ++k) {
            const double next = spec.term(k + 1);
            local = std::min(local, next - prev);
            prev = next;
        }
        out.per_checkpoint.emplace_back(c, local);
        if (c * 10 >= horizon) tail_min = std::min(tail_min, local);
    }
    out.liminf_gap_est = tail_min;
    return out;
}

UpperBoundReport bm_upper_bound(const SequenceSpec& spec, const UpperBoundOptions& options) {
    UpperBoundReport report;
    report.gaps = gap_liminf(spec, options.gap_horizon);
    const double gap_est = report.gaps.liminf_gap_est;
    const auto checkpoints = default_checkpoints(options.series_horizon);

    auto consider = [&](SeriesCertificate cert) {
        if (cert.verdict == Verdict::convergent_like &&
            (!report.best || cert.a < report.best->a))
            report.best = cert;
        report.attempts.push_back(std::move(cert));
    };

    auto try_via_gap = [&](double eps) {
        if (!(gap_est > tuning::gap_zero_threshold))
            fail(ErrorCode::no_certificate,
                 "gap liminf estimate <= " + std::to_string(tuning::gap_zero_threshold) +
                     "; no certificate (b possibly infinite)");
        if (eps <= 0) eps = gap_est * tuning::via_gap_eps_fraction;
        const auto witness = witness_gap_floor(gap_est, eps);
        consider(series_partial(spec, 1.0 / (gap_est - eps), witness, checkpoints));
    };

    auto try_via_psi = [&](double ell, bool strict) {
        if (!(ell > 0)) {
            if (strict) fail(ErrorCode::domain_error, "via_psi requires ell > 0");
            return;
        }
        const auto witness = witness_shifted_floor(ell);
        const auto scan = scan_witness(spec, witness, options.series_horizon);
        SeriesCertificate cert;
        if (scan.violation_count == 0) {
            const auto exact = rational_from_double(ell);
            cert = exact ? series_partial(spec, Rational(exact->den, exact->num), witness, checkpoints)
                         : series_partial(spec, 1.0 / ell, witness, checkpoints);
        } else {
            cert.a = 1.0 / ell;
            cert.witness = witness;
            cert.verdict = Verdict::inconclusive;
            cert.note = "witness violation at k=" + std::to_string(scan.first_violations.front());
            cert.distinct_checked_to = scan.checked_to;
        }
        attach_psi_diagnostics(spec, ell, options.series_horizon, cert);
        if (cert.kappa_est && *cert.kappa_est <= tuning::kappa_gate) {
            cert.verdict = Verdict::inconclusive;
            cert.note = "kappa estimate below gate";
        }
        consider(std::move(cert));
    };

    switch (options.strategy) {
        case UpperStrategy::via_identity:
            consider(series_partial(spec, options.a, witness_identity(), checkpoints));
            break;
        case UpperStrategy::via_gap:
            try_via_gap(options.eps);
            break;
        case UpperStrategy::via_psi:
            try_via_psi(options.ell, true);
            break;
        case UpperStrategy::automatic: {
            if (!(gap_est > tuning::gap_zero_threshold))
                fail(ErrorCode::no_certificate,
                     "gap liminf estimate <= " + std::to_string(tuning::gap_zero_threshold) +
                         "; no certificate (b possibly infinite)");
            try_via_gap(0.0);
            // Slope estimate over an even half-window; exact (hence a = 1/ell
            // exactly rational) for arithmetic and periodic-psi families.
            std::int64_t h = options.series_horizon;
            if (const auto cap = spec.max_index()) h = std::min(h, *cap);
            h -= h % 4;
            if (h >= 8) {
                const double slope =
                    (spec.term(h) - spec.term(h / 2)) / static_cast<double>(h - h / 2);
                if (slope > 0) {
                    const double ell =
                        rational_from_double(slope) ? slope : slope * (1.0 - tuning::slope_shrink);
                    try_via_psi(ell, false);
                }
            }
            break;
        }
    }
    return report;
}

OlivierReport olivier_check(const SequenceSpec& spec, std::span<const std::int64_t> checkpoints) {
    if (checkpoints.empty()) fail(ErrorCode::invalid_argument, "olivier_check needs checkpoints");
    OlivierReport out;
    std::int64_t max_k = *std::max_element(checkpoints.begin(), checkpoints.end());
    if (const auto cap = spec.max_index()) max_k = std::min(max_k, *cap);
    const auto samples = merged_sample_points(checkpoints, max_k);

    KahanSum sum;
    std::vector<SeriesCheckpoint> at_samples;
    std::size_t next = 0;
    for (std::int64_t k = 1; k <= max_k && next < samples.size(); ++k) {
        sum.add(1.0 / spec.term(k));
        while (next < samples.size() && samples[next] == k) {
            at_samples.push_back({k, sum.sum, false});
            ++next;
        }
    }
    auto sum_at = [&](std::int64_t k) {
        const auto it = std::lower_bound(
            at_samples.begin(), at_samples.end(), k,
            [](const SeriesCheckpoint& c, std::int64_t v) { return c.k < v; });
        return (it != at_samples.end() && it->k == k) ? *it : at_samples.back();
    };
    for (const std::int64_t k : checkpoints) out.partial_sums.push_back(sum_at(k));
    for (const std::int64_t k : {max_k / 8, max_k / 4, max_k / 2, max_k}) {
        const auto c = sum_at(std::max<std::int64_t>(1, k));
        out.verdict_points.push_back({c.k, c.sum});
    }
    out.verdict = verdict_from_points(out.verdict_points);
    out.tail_index_ratio = static_cast<double>(max_k) / spec.term(max_k);
    out.concludes_zero_density = out.verdict == Verdict::convergent_like;
    out.conclusion = out.concludes_zero_density
                         ? "d = b = 0 (finite-scale evidence)"
                         : "no conclusion (series not convergent-like)";
    return out;
}

RescaleReport rescale_series(const SequenceSpec& lambda, const SequenceSpec& mu,
                             const Rational& ell, std::span<const std::int64_t> checkpoints) {
    if (!(ell.value() > 0)) fail(ErrorCode::domain_error, "rescale requires ell > 0");
    if (checkpoints.empty()) fail(ErrorCode::invalid_argument, "rescale needs checkpoints");

    RescaleReport out;
    out.ell = ell;
    std::int64_t max_k = *std::max_element(checkpoints.begin(), checkpoints.end());
    if (const auto cap = lambda.max_index()) max_k = std::min(max_k, *cap);
    if (const auto cap = mu.max_index()) max_k = std::min(max_k, *cap);
    const auto samples = merged_sample_points(checkpoints, max_k);

    const bool exact = lambda.integer_valued() && mu.integer_valued();
    KahanSum sum;
    bool all_zero = true;
    std::vector<SeriesCheckpoint> at_samples;
    std::size_t next = 0;
    for (std::int64_t k = 1; k <= max_k && next < samples.size(); ++k) {
        const double lv = lambda.term(k);
        const double mv = mu.term(k);
        double term;
        if (exact && int64_exact(lv) && int64_exact(mv)) {
            // |1/L - B/(A*M)| = |A*M - B*L| / (A*L*M)
            const auto L = static_cast<std::int64_t>(std::nearbyint(lv));
            const auto M = static_cast<std::int64_t>(std::nearbyint(mv));
            const __int128 num =
                static_cast<__int128>(ell.num) * M - static_cast<__int128>(ell.den) * L;
            const __int128 mag = num < 0 ? -num : num;
            term = static_cast<double>(mag) / (static_cast<double>(ell.num) * lv * mv);
            if (mag != 0) all_zero = false;
        } else {
            term = std::abs(1.0 / lv - 1.0 / (ell.value() * mv));
            if (term != 0.0) all_zero = false;
        }
        sum.add(term);
        while (next < samples.size() && samples[next] == k) {
            at_samples.push_back({k, sum.sum, all_zero});
            ++next;
        }
    }
    auto sum_at = [&](std::int64_t k) {
        const auto it = std::lower_bound(
            at_samples.begin(), at_samples.end(), k,
            [](const SeriesCheckpoint& c, std::int64_t v) { return c.k < v; });
        return (it != at_samples.end() && it->k == k) ? *it : at_samples.back();
    };
    for (const std::int64_t k : checkpoints) out.partial_sums.push_back(sum_at(k));
    for (const std::int64_t k : {max_k / 8, max_k / 4, max_k / 2, max_k}) {
        const auto c = sum_at(std::max<std::int64_t>(1, k));
        out.verdict_points.push_back({c.k, c.sum});
    }
    out.verdict = verdict_from_points(out.verdict_points);
    if (out.verdict == Verdict::convergent_like)
        out.implied_relation = "b(M) = " + ell.str() + " * b(Lambda)";
    return out;
}

EllScanReport ell_unique_scan(const SequenceSpec& lambda, const SequenceSpec& mu,
                              std::span<const Rational> grid,
                              std::span<const std::int64_t> checkpoints) {
    if (grid.empty()) fail(ErrorCode::invalid_argument, "ell_unique_scan needs a grid");
    EllScanReport out;
    for (const auto& ell : grid) {
        auto rep = rescale_series(lambda, mu, ell, checkpoints);
        if (rep.verdict == Verdict::convergent_like) out.convergent.push_back(ell);
        out.per_ell.push_back(std::move(rep));
    }
    out.unique = out.convergent.size() <= 1;
    if (!out.convergent.empty()) {
        out.sigma_proxy = *std::min_element(out.convergent.begin(), out.convergent.end());
        out.tau_proxy = *std::max_element(out.convergent.begin(), out.convergent.end());
    }
    return out;
}

SeriesCertificate harmonic_witness_check(const SequenceSpec& spec, const Rational& ell,
                                         std::span<const std::int64_t> checkpoints) {
    if (ell.num < 0) fail(ErrorCode::domain_error, "harmonic witness requires ell >= 0");
    auto cert = series_partial(spec, ell, witness_identity(), checkpoints);
    if (cert.verdict == Verdict::convergent_like)
        cert.note = "ell = b(Lambda) (finite-scale evidence)";
    return cert;
}

std::vector<std::int64_t> default_checkpoints(std::int64_t max_k) {
    if (max_k < 8) fail(ErrorCode::range_error, "checkpoint horizon must be >= 8");
    return {max_k / 8, max_k / 4, max_k / 2, max_k};
}

}  // namespace bmd
