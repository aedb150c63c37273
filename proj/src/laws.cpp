#include "bmd/laws.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>

#include "bmd/density.hpp"
#include "bmd/error.hpp"

namespace bmd {
namespace {

bool has_exact_periodic_gaps(const SequenceSpec& spec) {
    if (std::holds_alternative<Arithmetic>(spec.family())) return true;
    if (const auto* f = std::get_if<PerturbedLinear>(&spec.family()))
        return f->psi != PsiKind::sine;
    return false;
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

GapProfile detect_gap_profile(const SequenceSpec& spec, int p_max, std::int64_t horizon) {
    if (p_max < 1) fail(ErrorCode::range_error, "detect_gap_profile requires p_max >= 1");
    if (const auto cap = spec.max_index()) horizon = std::min(horizon, *cap);
    if (horizon < 64) fail(ErrorCode::range_error, "detect_gap_profile horizon too small");

    std::vector<double> gaps(static_cast<std::size_t>(horizon - 1));
    double prev = spec.term(1);
    for (std::int64_t n = 2; n <= horizon; ++n) {
        const double cur = spec.term(n);
        gaps[static_cast<std::size_t>(n - 2)] = cur - prev;
        prev = cur;
    }

    const bool exact = has_exact_periodic_gaps(spec);
    // Window = the last index-decade. A narrower window can sit entirely
    // between the decade jumps of block-structured sequences (first-digit)
    // and mistake the locally constant gaps for a period.
    const std::size_t tail_from = gaps.size() / 10;

    for (int p = 1; p <= p_max; ++p) {
        double residual = 0.0;
        double mean_sum = 0.0;
        std::vector<double> limits(static_cast<std::size_t>(p));
        bool enough = true;
        for (int j = 0; j < p && enough; ++j) {
            double lo = std::numeric_limits<double>::infinity();
            double hi = -lo;
            double acc = 0.0;
            std::int64_t count = 0;
            for (std::size_t i = tail_from + ((p - tail_from % p + j) % p); i < gaps.size();
                 i += static_cast<std::size_t>(p)) {
                lo = std::min(lo, gaps[i]);
                hi = std::max(hi, gaps[i]);
                acc += gaps[i];
                ++count;
            }
            if (count < 4) { enough = false; break; }
            limits[static_cast<std::size_t>(j)] = acc / static_cast<double>(count);
            mean_sum += limits[static_cast<std::size_t>(j)];
            residual = std::max(residual, hi - lo);
        }
        if (!enough) continue;
        const double mean_gap = mean_sum / p;
        const double tol = exact ? tuning::gap_profile_tol_exact * (1.0 + mean_gap)
                                 : tuning::gap_profile_tol_loose;
        if (residual < tol) {
            GapProfile out;
            out.period = p;
            out.gap_limits = std::move(limits);
            out.residual = residual;
            out.mean_gap = mean_gap;
            out.tolerance = tol;
            if (mean_sum > 0) out.predicted_density = static_cast<double>(p) / mean_sum;
            // Necessary condition diagnostic: lambda_{n+p} - lambda_n -> sum a_j.
            double osc_lo = std::numeric_limits<double>::infinity(), osc_hi = -osc_lo;
            for (std::int64_t n = horizon / 10; n + p <= horizon; ++n) {
                const double d = spec.term(n + p) - spec.term(n);
                osc_lo = std::min(osc_lo, d);
                osc_hi = std::max(osc_hi, d);
            }
            out.psi_difference_vanishes = (osc_hi - osc_lo) < std::max(tol, 1e-9);
            return out;
        }
    }
    fail(ErrorCode::no_profile,
         "no period p <= " + std::to_string(p_max) + " fits the gap subsequences of " +
             spec.render());
}

LawReport cesaro_check(const SequenceSpec& spec, const GapProfile& profile, std::int64_t horizon,
                       double tolerance) {
    LawReport rep;
    rep.law = "cesaro";
    rep.spec = spec.render();
    rep.tolerance = tolerance;
    if (!profile.predicted_density) {
        rep.applicable = false;
        rep.detail = "gap limits sum to zero; lambda_n/n has no positive limit";
        return rep;
    }
    if (const auto cap = spec.max_index()) horizon = std::min(horizon, *cap);
    const double target = profile.mean_gap;
    double worst = 0.0;
    for (const std::int64_t n : geometric_grid(horizon)) {
        if (n * 10 < horizon) continue;  // tail decade
        const double dev = std::abs(spec.term(n) / static_cast<double>(n) - target);
        worst = std::max(worst, dev);
        if (rep.evidence.size() < 8) rep.evidence.emplace_back("n=" + std::to_string(n), dev);
    }
    rep.observed = worst;
    rep.pass = worst <= tolerance;
    rep.detail = "max tail |lambda_n/n - " + fmt(target) + "|";
    return rep;
}

LawReport floor_ratio_check(const std::function<double(std::int64_t)>& x,
                            const std::function<double(std::int64_t)>& y, std::int64_t N) {
    LawReport rep;
    rep.law = "floor_ratio";
    rep.spec = "-";
    rep.tolerance = 0.0;  // the bound is exact, no slack
    double worst_excess = -std::numeric_limits<double>::infinity();
    double first_diff = 0.0, last_diff = 0.0;
    for (std::int64_t n = 1; n <= N; ++n) {
        const double xn = x(n);
        const double yn = y(n);
        if (!(yn > xn)) {
            rep.pass = false;
            rep.detail = "precondition y_n > x_n violated at n=" + std::to_string(n);
            return rep;
        }
        const double diff = yn - xn;
        if (n == 1) first_diff = diff;
        last_diff = diff;
        if (diff <= 1.0) continue;  // bound 2/(y-x-1) only meaningful past gap 1
        const double ratio = (std::floor(yn) - std::floor(xn)) / diff;
        const double excess = std::abs(ratio - 1.0) - 2.0 / (diff - 1.0);
        worst_excess = std::max(worst_excess, excess);
    }
    if (!(last_diff > first_diff + 1.0) || !(last_diff > 4.0)) {
        rep.applicable = false;
        rep.pass = false;
        rep.detail = "precondition y_n - x_n -> infinity not in evidence (grew " + fmt(first_diff) +
                     " -> " + fmt(last_diff) + ")";
        return rep;
    }
    rep.observed = worst_excess;
    rep.pass = worst_excess <= 0.0;
    rep.detail = "max |ratio-1| - 2/(y-x-1) over n <= " + std::to_string(N);
    return rep;
}

LawReport regvar_check(const SequenceSpec& spec, std::span<const double> t_values,
                       std::span<const double> x_grid, std::optional<double> ell,
                       double tolerance) {
    LawReport rep;
    rep.law = "regvar";
    rep.spec = spec.render();
    rep.tolerance = tolerance;
    if (x_grid.empty() || t_values.empty())
        fail(ErrorCode::invalid_argument, "regvar_check needs grids");

    const double x_hi = x_grid.back();
    double slope = ell.value_or(0.0);
    if (!ell) {
        // Preferred source: the gap profile (exact for periodic families);
        // fallback: stabilized interpolant(x)/x (covers e.g. sine perturbations).
        bool found = false;
        try {
            const auto profile = detect_gap_profile(spec);
            if (profile.predicted_density) {
                slope = profile.mean_gap;
                found = true;
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::no_profile) throw;
        }
        if (!found) {
            const double s1 = spec.interpolant(x_hi) / x_hi;
            const double s2 = spec.interpolant(x_hi / 4.0) / (x_hi / 4.0);
            if (std::abs(s1 - s2) <= 0.05 * std::max(s1, s2)) {
                slope = s1;
                found = true;
            }
        }
        if (!found) {
            rep.applicable = false;
            rep.detail = "slope limit not detectable (lambda_n/n unstable or infinite)";
            return rep;
        }
    }
    // Stability screen catches ell = infinity cases like the powers.
    const double r1 = spec.interpolant(x_hi) / x_hi;
    const double r2 = spec.interpolant(x_hi / 4.0) / (x_hi / 4.0);
    if (r1 > 1.5 * r2 || !(slope > 0)) {
        rep.applicable = false;
        rep.detail = "interpolant(x)/x still growing; ell treated as infinite";
        return rep;
    }

    const double tail_cut = x_hi / 10.0;
    double worst_i = 0.0, worst_ii = 0.0, worst_iii = 0.0;
    for (const double x : x_grid) {
        if (x < tail_cut) continue;
        worst_i = std::max(worst_i, std::abs(spec.interpolant(x) / x - slope));
        for (const double t : t_values)
            worst_ii = std::max(worst_ii,
                                std::abs(spec.interpolant(t * x) / spec.interpolant(x) - t));
        for (const double beta : {1.5, 2.0, 4.0}) {
            const double q =
                (spec.interpolant(beta * x) - spec.interpolant(x)) / (beta * x - x);
            worst_iii = std::max(worst_iii, std::abs(q - slope));
        }
    }
    rep.evidence.emplace_back("part_i", worst_i);
    rep.evidence.emplace_back("part_ii", worst_ii);
    rep.evidence.emplace_back("part_iii", worst_iii);
    rep.observed = std::max({worst_i / std::max(slope, 1.0), worst_ii, worst_iii / std::max(slope, 1.0)});
    rep.pass = rep.observed <= tolerance;
    rep.detail = "max scaled deviation of (i),(ii),(iii) on the tail grid";
    return rep;
}

Theorem52Result theorem52_pipeline(const SequenceSpec& spec) {
    Theorem52Result out;
    out.profile = detect_gap_profile(spec);
    if (!out.profile.predicted_density)
        fail(ErrorCode::no_profile, "gap limits sum to zero; predicted density infinite");
    out.predicted = *out.profile.predicted_density;

    const auto dc = density_by_counting(spec, tuning::default_series_horizon);
    const auto di = density_by_index(spec, tuning::default_series_horizon);
    out.counting_lower = dc.lower_est;
    out.counting_upper = dc.upper_est;
    out.index_lower = di.lower_est;
    out.index_upper = di.upper_est;

    const auto search = search_lower_bound(spec, default_ratio_grid(), default_scale_grid(),
                                           tuning::default_interval_terms);
    out.interval_lower = search.best;

    const auto upper = bm_upper_bound(spec);
    if (upper.best) {
        out.upper_certificate = upper.best->a;
        out.upper_convergent = true;
    }

    double dev = 0.0;
    for (const double v : {out.counting_lower, out.counting_upper, out.index_lower,
                           out.index_upper, out.interval_lower, out.upper_certificate})
        dev = std::max(dev, std::abs(v - out.predicted));
    out.max_deviation = dev;
    out.pass = out.upper_convergent && dev <= tuning::agreement_tolerance;
    return out;
}

LawReport theorem52_report(const SequenceSpec& spec) {
    LawReport rep;
    rep.law = "theorem52";
    rep.spec = spec.render();
    rep.tolerance = tuning::agreement_tolerance;
    try {
        const auto r = theorem52_pipeline(spec);
        rep.observed = r.max_deviation;
        rep.pass = r.pass;
        rep.detail = "p=" + std::to_string(r.profile.period) + ", predicted " + fmt(r.predicted);
        rep.evidence = {{"counting_lower", r.counting_lower},
                        {"counting_upper", r.counting_upper},
                        {"index_lower", r.index_lower},
                        {"index_upper", r.index_upper},
                        {"interval_lower", r.interval_lower},
                        {"upper_certificate", r.upper_certificate}};
    } catch (const Error& e) {
        if (e.code() != ErrorCode::no_profile) throw;
        rep.applicable = false;
        rep.detail = e.what();
    }
    return rep;
}

LawReport inequality41_check(const SequenceSpec& spec) {
    LawReport rep;
    rep.law = "inequality41";
    rep.spec = spec.render();
    rep.tolerance = tuning::agreement_tolerance;

    const auto dc = density_by_counting(spec, tuning::default_horizon);
    std::optional<SeriesCertificate> best;
    GapDiagnostic gaps;
    try {
        auto upper = bm_upper_bound(spec);
        best = upper.best;
        gaps = upper.gaps;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::no_certificate) throw;
        rep.applicable = false;
        rep.detail = "no upper certificate (b possibly infinite); inequality vacuous";
        return rep;
    }
    if (!best) {
        rep.applicable = false;
        rep.detail = "no convergent-like certificate at default horizons";
        return rep;
    }

    auto systems = std::vector<LowerBoundEvaluation>{};
    auto search = search_lower_bound(spec, default_ratio_grid(), default_scale_grid(),
                                     tuning::default_interval_terms);
    double interval_lower = search.best;
    if (const auto* f = std::get_if<FirstDigit>(&spec.family())) {
        const std::vector<IntervalSystem> paper = {
            IntervalSystem::first_digit_blocks(f->digit, f->base),
            IntervalSystem::decade_tail(f->digit, f->base)};
        interval_lower = std::max(interval_lower, bm_lower_bound(spec, paper, 14).best);
    }

    const double upper_gap = dc.upper_est - best->a;              // must be <= tol
    const double lower_gap = dc.lower_est - interval_lower;      // must be <= tol
    rep.observed = std::max(upper_gap, lower_gap);
    rep.pass = rep.observed <= rep.tolerance;
    rep.detail = "d_upper " + fmt(dc.upper_est) + " vs certificate " + fmt(best->a) +
                 "; d_lower " + fmt(dc.lower_est) + " vs interval evidence " + fmt(interval_lower);
    rep.evidence = {{"upper_density", dc.upper_est},
                    {"certified_upper", best->a},
                    {"lower_density", dc.lower_est},
                    {"interval_lower", interval_lower}};
    return rep;
}

LawReport integer_bound_check(const SequenceSpec& spec) {
    LawReport rep;
    rep.law = "integer_bound";
    rep.spec = spec.render();
    // The gap-floor certificate with default eps certifies at 1/(g - g/10),
    // i.e. up to 1/0.9 for unit gaps; 0.12 covers that construction slack.
    rep.tolerance = 0.12;
    if (!spec.integer_valued()) {
        rep.applicable = false;
        rep.detail = "sequence is not integer-valued";
        return rep;
    }

    double best_upper = std::numeric_limits<double>::infinity();
    try {
        const auto upper = bm_upper_bound(spec);
        if (upper.best) best_upper = upper.best->a;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::no_certificate) throw;
    }

    // ell_I ratios can exceed 1 only by the endpoint effect 1/|I_n|.
    double worst_ell_excess = 0.0;
    std::vector<IntervalSystem> systems;
    for (const double r : default_ratio_grid()) systems.push_back(IntervalSystem::geometric(r, 1.0));
    if (const auto* f = std::get_if<FirstDigit>(&spec.family())) {
        systems.push_back(IntervalSystem::first_digit_blocks(f->digit, f->base));
        systems.push_back(IntervalSystem::decade_tail(f->digit, f->base));
    }
    for (const auto& system : systems) {
        const auto ell = ell_estimate(system, spec, 14);
        for (const auto& [n, ratio] : ell.per_n) {
            const auto [a, b] = system.interval(n);
            worst_ell_excess = std::max(worst_ell_excess, ratio - (1.0 + 1.0 / (b - a)));
        }
    }

    const double cert_excess = std::isfinite(best_upper) ? best_upper - 1.0 : 0.0;
    rep.observed = std::max(cert_excess, worst_ell_excess > 0 ? 1e9 : cert_excess);
    rep.pass = cert_excess <= rep.tolerance && worst_ell_excess <= 0.0;
    rep.detail = "best certificate " + fmt(best_upper) + "; max ell_I excess " +
                 fmt(worst_ell_excess);
    rep.evidence = {{"best_upper", best_upper}, {"ell_excess", worst_ell_excess}};
    return rep;
}

std::vector<SequenceSpec> builtin_roster() {
    std::vector<SequenceSpec> roster;
    for (int c = 1; c <= 5; ++c) roster.push_back(SequenceSpec::arithmetic(c, 0));
    roster.push_back(SequenceSpec::arithmetic(3, 1));
    roster.push_back(SequenceSpec::arithmetic(2, 6));
    for (int p = 1; p <= 9; ++p) roster.push_back(SequenceSpec::first_digit(p, 10));
    roster.push_back(SequenceSpec::power(2));
    roster.push_back(SequenceSpec::power(3));
    roster.push_back(SequenceSpec::log_power(2));
    roster.push_back(SequenceSpec::perturbed(1.5, PsiKind::alternating));
    roster.push_back(SequenceSpec::perturbed(2.0, PsiKind::sine));
    return roster;
}

namespace {

LawReport floor_identity_check(const SequenceSpec& spec, std::mt19937_64& rng) {
    LawReport rep;
    rep.law = "floor_identity";
    rep.spec = spec.render();
    rep.tolerance = 0.0;
    const double lo = spec.term(1);
    double hi = 1e6;
    if (const auto cap = spec.max_query()) hi = std::min(hi, *cap);
    if (const auto cap = spec.max_index())
        hi = std::min(hi, spec.term(std::min<std::int64_t>(*cap, 100000)));
    std::uniform_real_distribution<double> dist(lo, hi);
    std::int64_t mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
        const double t = dist(rng);
        const auto via_inverse =
            static_cast<std::int64_t>(std::floor(spec.interpolant_inverse(t)));
        if (via_inverse != spec.counting(t)) ++mismatches;
    }
    rep.observed = static_cast<double>(mismatches);
    rep.pass = mismatches == 0;
    rep.detail = "floor(inverse(t)) vs counting(t) on 1000 random t";
    return rep;
}

LawReport counting_cross_check(const SequenceSpec& spec, std::mt19937_64& rng) {
    LawReport rep;
    rep.law = "counting_cross";
    rep.spec = spec.render();
    rep.tolerance = 0.0;
    double hi = 1e6;
    if (const auto cap = spec.max_query()) hi = std::min(hi, *cap);
    std::uniform_real_distribution<double> dist(0.0, hi);
    std::int64_t mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
        const double t = dist(rng);
        // Independent oracle: bisect the largest k with term(k) <= t.
        std::int64_t brute = 0;
        const std::int64_t limit = spec.max_index().value_or(INT64_MAX / 4);
        if (spec.term(1) <= t) {
            std::int64_t lo = 1;  // term(lo) <= t throughout
            while (lo < limit && spec.term(std::min(lo * 2, limit)) <= t)
                lo = std::min(lo * 2, limit);
            if (lo >= limit) {
                brute = limit;
            } else {
                std::int64_t hi_k = std::min(lo * 2, limit);  // term(hi_k) > t
                while (lo + 1 < hi_k) {
                    const std::int64_t mid = lo + (hi_k - lo) / 2;
                    (spec.term(mid) <= t ? lo : hi_k) = mid;
                }
                brute = lo;
            }
        }
        if (brute != spec.counting(t)) ++mismatches;
    }
    rep.observed = static_cast<double>(mismatches);
    rep.pass = mismatches == 0;
    rep.detail = "closed-form counting vs term() bisection on 1000 random t";
    return rep;
}

LawReport interval_monotone_check() {
    LawReport rep;
    rep.law = "interval_monotone";
    rep.spec = "-";
    rep.tolerance = 0.0;
    double worst = 0.0;
    const std::vector<IntervalSystem> systems = {
        IntervalSystem::geometric(2, 1), IntervalSystem::geometric(1.5, 2),
        IntervalSystem::geometric(10, 1), IntervalSystem::first_digit_blocks(1),
        IntervalSystem::first_digit_blocks(9), IntervalSystem::decade_tail(1),
        IntervalSystem::decade_tail(7)};
    for (const auto& system : systems) {
        const auto cls = classify(system, 200);
        for (std::size_t i = 1; i < cls.short_long_partial.size(); ++i)
            worst = std::min(worst,
                             cls.short_long_partial[i].value - cls.short_long_partial[i - 1].value);
        for (std::size_t i = 1; i < cls.substantial_partial.size(); ++i)
            worst = std::min(worst,
                             cls.substantial_partial[i].value - cls.substantial_partial[i - 1].value);
        if (cls.in_c_gt1 && cls.substantial_verdict != Verdict::divergent_like) {
            rep.pass = false;
            rep.detail = system.render() + ": in_c_gt1 without divergent-like substantial sum";
            return rep;
        }
    }
    rep.observed = -worst;
    rep.pass = worst >= 0.0;
    rep.detail = "partial sums nondecreasing across built-in systems";
    return rep;
}

LawReport floor_ratio_random_suite(std::uint64_t seed, int pairs) {
    LawReport rep;
    rep.law = "floor_ratio";
    rep.spec = "-";
    rep.tolerance = 0.0;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_real_distribution<double> slope(0.1, 5.0);
    std::uniform_real_distribution<double> offset(0.0, 10.0);
    std::uniform_real_distribution<double> growth(0.5, 3.0);
    std::uniform_real_distribution<double> expo(0.3, 1.0);
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < pairs; ++i) {
        const double a = slope(rng), b = offset(rng), c = growth(rng), g = expo(rng);
        auto x = [=](std::int64_t n) { return a * static_cast<double>(n) + b; };
        auto y = [=](std::int64_t n) {
            return a * static_cast<double>(n) + b + c * std::pow(static_cast<double>(n), g) + 2.0;
        };
        const auto one = floor_ratio_check(x, y, 512);
        if (!one.applicable || !one.pass) {
            rep.pass = false;
            rep.detail = "pair #" + std::to_string(i) + ": " + one.detail;
            rep.observed = one.observed;
            return rep;
        }
        worst = std::max(worst, one.observed);
    }
    rep.observed = worst;
    rep.pass = true;
    rep.detail = "exact bound held on " + std::to_string(pairs) + " random stream pairs";
    return rep;
}

bool law_selected(const std::string& only, const std::string& law) {
    return only.empty() || law.find(only) != std::string::npos;
}

}  // namespace

std::vector<LawReport> run_law_suite(const std::optional<SequenceSpec>& spec,
                                     const std::string& only, std::uint64_t seed,
                                     const std::map<std::string, double>& tolerance) {
    std::vector<LawReport> out;
    std::mt19937_64 rng(seed);
    auto tol_or = [&](const char* key, double fallback) {
        const auto it = tolerance.find(key);
        return it == tolerance.end() ? fallback : it->second;
    };

    auto run_spec_laws = [&](const SequenceSpec& s) {
        std::optional<GapProfile> profile;
        bool no_profile = false;
        if (law_selected(only, "gap_profile") || law_selected(only, "cesaro") ||
            law_selected(only, "theorem52")) {
            LawReport rep;
            rep.law = "gap_profile";
            rep.spec = s.render();
            try {
                profile = detect_gap_profile(s);
                rep.observed = profile->residual;
                rep.tolerance = profile->tolerance;
                rep.pass = true;
                rep.detail = "p=" + std::to_string(profile->period) +
                             (profile->predicted_density
                                  ? ", predicted density " + fmt(*profile->predicted_density)
                                  : ", gap limits sum to zero");
                for (std::size_t j = 0; j < profile->gap_limits.size() && j < 8; ++j)
                    rep.evidence.emplace_back("a_" + std::to_string(j), profile->gap_limits[j]);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::no_profile) throw;
                no_profile = true;
                rep.applicable = false;
                rep.detail = e.what();
            }
            if (law_selected(only, "gap_profile")) out.push_back(rep);
        }
        if (law_selected(only, "cesaro")) {
            if (profile) {
                out.push_back(cesaro_check(s, *profile, tuning::default_detect_horizon * 10,
                                           tol_or("cesaro", 1e-2)));
            } else if (no_profile) {
                LawReport rep;
                rep.law = "cesaro";
                rep.spec = s.render();
                rep.applicable = false;
                rep.detail = "no gap profile";
                out.push_back(rep);
            }
        }
        if (law_selected(only, "regvar")) {
            const std::vector<double> ts = {0.5, 2.0, 3.0};
            const auto grid_i = geometric_grid(10000);
            std::vector<double> xs(grid_i.begin(), grid_i.end());
            out.push_back(regvar_check(s, ts, xs, std::nullopt, tol_or("regvar", 1e-2)));
        }
        if (law_selected(only, "theorem52")) out.push_back(theorem52_report(s));
        if (law_selected(only, "inequality41")) out.push_back(inequality41_check(s));
        if (law_selected(only, "integer_bound")) out.push_back(integer_bound_check(s));
        if (law_selected(only, "floor_identity")) out.push_back(floor_identity_check(s, rng));
        if (law_selected(only, "counting_cross")) out.push_back(counting_cross_check(s, rng));
    };

    if (spec) {
        run_spec_laws(*spec);
        if (law_selected(only, "interval_monotone")) out.push_back(interval_monotone_check());
    } else {
        for (const auto& s : builtin_roster()) run_spec_laws(s);
        if (law_selected(only, "interval_monotone")) out.push_back(interval_monotone_check());
        if (law_selected(only, "floor_ratio")) out.push_back(floor_ratio_random_suite(seed, 10000));
    }
    return out;
}

bool all_laws_pass(const std::vector<LawReport>& reports) {
    for (const auto& rep : reports)
        if (rep.applicable && !rep.pass) return false;
    return true;
}

}  // namespace bmd
