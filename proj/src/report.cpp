#include "bmd/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "bmd/error.hpp"

namespace bmd {

double report_round(double v) {
    if (!std::isfinite(v)) return v;
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", tuning::report_sig_digits, v);
    return std::strtod(buf, nullptr);
}

RunOptions RunOptions::from_json_text(const char* text) {
    RunOptions opt;
    if (text == nullptr || *text == '\0') return opt;
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(ErrorCode::parse_error, "options are not valid JSON");
    if (!j.is_object()) fail(ErrorCode::parse_error, "options must be a JSON object");

    auto as_int = [&](const char* key, std::int64_t& out, std::int64_t lo) {
        if (!j.contains(key)) return;
        const double v = j.at(key).get<double>();
        if (!(v >= static_cast<double>(lo)) || v > 9.0e18)
            fail(ErrorCode::range_error, std::string(key) + " out of range");
        out = static_cast<std::int64_t>(v);
    };
    as_int("horizon", opt.horizon, 100);
    as_int("series_horizon", opt.series_horizon, 8);
    as_int("gap_horizon", opt.gap_horizon, 10);
    as_int("interval_terms", opt.interval_terms, 4);
    if (opt.horizon > tuning::int64_safe_horizon)
        fail(ErrorCode::overflow, "horizon exceeds the 64-bit-safe cap 1e15");
    if (j.contains("seed")) opt.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("only")) opt.only = j.at("only").get<std::string>();
    if (j.contains("checkpoints"))
        for (const auto& v : j.at("checkpoints")) {
            const auto k = v.get<std::int64_t>();
            if (k < 1) fail(ErrorCode::range_error, "checkpoints must be >= 1");
            opt.checkpoints.push_back(k);
        }
    if (j.contains("tolerance")) {
        for (const auto& [key, value] : j.at("tolerance").items()) {
            const double t = value.get<double>();
            if (!(t > 0.0) || !(t < 1.0))
                fail(ErrorCode::range_error, "tolerance override '" + key + "' must lie in (0,1)");
            opt.tolerance[key] = t;
        }
    }
    return opt;
}

ordered_json RunOptions::to_json() const {
    ordered_json j;
    j["horizon"] = horizon;
    j["series_horizon"] = series_horizon;
    j["gap_horizon"] = gap_horizon;
    j["interval_terms"] = interval_terms;
    j["seed"] = seed;
    if (!only.empty()) j["only"] = only;
    if (!checkpoints.empty()) j["checkpoints"] = checkpoints;
    if (!tolerance.empty()) {
        ordered_json t;
        for (const auto& [k, v] : tolerance) t[k] = v;
        j["tolerance"] = t;
    }
    return j;
}

ordered_json constants_json() {
    ordered_json c;
    c["grid_ratio"] = tuning::grid_ratio;
    c["grid_span_decades"] = tuning::grid_span_decades;
    c["tail_window_default"] = tuning::tail_window_default;
    c["divergence_step_coeff"] = tuning::divergence_step_coeff;
    c["divergence_power"] = tuning::divergence_power;
    c["convergence_abs_coeff"] = tuning::convergence_abs_coeff;
    c["convergence_decay_ratio"] = tuning::convergence_decay_ratio;
    c["gap_zero_threshold"] = tuning::gap_zero_threshold;
    c["via_gap_eps_fraction"] = tuning::via_gap_eps_fraction;
    c["kappa_gate"] = tuning::kappa_gate;
    c["int64_safe_horizon"] = tuning::int64_safe_horizon;
    c["gap_profile_tol_exact"] = tuning::gap_profile_tol_exact;
    c["gap_profile_tol_loose"] = tuning::gap_profile_tol_loose;
    c["agreement_tolerance"] = tuning::agreement_tolerance;
    c["report_sig_digits"] = tuning::report_sig_digits;
    return c;
}

ordered_json envelope(const std::string& command, const RunOptions& options,
                      const std::optional<std::string>& spec_text, ordered_json results) {
    ordered_json doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["command"] = command;
    ordered_json config = options.to_json();
    if (spec_text) config["spec"] = *spec_text;
    doc["config"] = std::move(config);
    doc["results"] = std::move(results);
    doc["constants"] = constants_json();
    return doc;
}

ordered_json to_json(const DensityEstimate& est) {
    ordered_json j;
    j["method"] = est.method == DensityMethod::counting ? "counting" : "index";
    j["horizon"] = est.horizon;
    j["lower_est"] = report_round(est.lower_est);
    j["upper_est"] = report_round(est.upper_est);
    j["tail_window"] = est.tail_window;
    j["tail_begin"] = est.tail_begin;
    if (est.horizon_clamped) j["horizon_clamped"] = true;
    ordered_json pts = ordered_json::array();
    for (const auto& c : est.checkpoints) {
        ordered_json p;
        p["n"] = c.n;
        p["ratio"] = report_round(c.ratio);
        pts.push_back(std::move(p));
    }
    j["checkpoints"] = std::move(pts);
    return j;
}

ordered_json to_json(const EquivalenceReport& rep) {
    ordered_json j;
    j["by_counting"] = to_json(rep.by_counting);
    j["by_index"] = to_json(rep.by_index);
    j["lower_discrepancy"] = report_round(rep.lower_discrepancy);
    j["upper_discrepancy"] = report_round(rep.upper_discrepancy);
    j["tolerance_hint"] = report_round(rep.tolerance_hint);
    return j;
}

namespace {

ordered_json partial_points(const std::vector<PartialSumPoint>& pts) {
    ordered_json arr = ordered_json::array();
    for (const auto& p : pts) {
        ordered_json q;
        q["n"] = p.n;
        q["sum"] = report_round(p.value);
        arr.push_back(std::move(q));
    }
    return arr;
}

}  // namespace

ordered_json to_json(const SystemClass& cls) {
    ordered_json j;
    ordered_json verdicts;
    verdicts["short_long"] = cls.short_long_verdict == Verdict::divergent_like ? "long"
                             : cls.short_long_verdict == Verdict::convergent_like
                                 ? "short"
                                 : "inconclusive";
    verdicts["substantial"] = verdict_name(cls.substantial_verdict);
    verdicts["in_C_gt1"] = cls.in_c_gt1;
    j["class"] = std::move(verdicts);
    ordered_json sums;
    sums["short_long"] = partial_points(cls.short_long_partial);
    sums["substantial"] = partial_points(cls.substantial_partial);
    j["partial_sums"] = std::move(sums);
    j["ratio_limsup_est"] = report_round(cls.ratio_limsup_est);
    return j;
}

ordered_json to_json(const EllEstimate& est) {
    ordered_json j;
    ordered_json per = ordered_json::array();
    for (const auto& [n, ratio] : est.per_n) {
        ordered_json q;
        q["n"] = n;
        q["ratio"] = report_round(ratio);
        per.push_back(std::move(q));
    }
    j["per_n"] = std::move(per);
    j["liminf_est"] = report_round(est.liminf_est);
    j["terms_used"] = est.terms_used;
    return j;
}

ordered_json to_json(const SeriesCertificate& cert) {
    ordered_json j;
    j["a"] = report_round(cert.a);
    if (cert.a_exact) j["a_exact"] = cert.a_exact->str();
    ordered_json w;
    w["construction"] = cert.witness.describe();
    j["witness"] = std::move(w);
    ordered_json pts = ordered_json::array();
    for (const auto& c : cert.partial_sums) {
        ordered_json q;
        q["K"] = c.k;
        q["S_K"] = report_round(c.sum);
        if (c.exact_zero) {
            // Exact integer pair: the rational path summed to literally zero.
            q["exact"] = ordered_json::array({0, 1});
        }
        pts.push_back(std::move(q));
    }
    j["checkpoints"] = std::move(pts);
    j["verdict"] = verdict_name(cert.verdict);
    if (cert.implied_upper_bound)
        j["implied_bound"] = "b <= " + std::to_string(report_round(*cert.implied_upper_bound));
    ordered_json diag;
    if (cert.kappa_est) diag["kappa"] = report_round(*cert.kappa_est);
    if (cert.alpha_est) diag["alpha"] = report_round(*cert.alpha_est);
    if (!diag.empty()) j["diagnostics"] = std::move(diag);
    j["skipped_indices"] = cert.skipped_indices;
    j["distinct_checked_to"] = cert.distinct_checked_to;
    if (!cert.note.empty()) j["note"] = cert.note;
    return j;
}

ordered_json to_json(const GapDiagnostic& gaps) {
    ordered_json j;
    j["liminf_gap_est"] = report_round(gaps.liminf_gap_est);
    j["horizon"] = gaps.horizon;
    ordered_json per = ordered_json::array();
    for (const auto& [k, g] : gaps.per_checkpoint) {
        ordered_json q;
        q["k"] = k;
        q["min_gap"] = report_round(g);
        per.push_back(std::move(q));
    }
    j["per_checkpoint"] = std::move(per);
    return j;
}

ordered_json to_json(const LawReport& rep) {
    ordered_json j;
    j["law"] = rep.law;
    j["spec"] = rep.spec;
    j["applicable"] = rep.applicable;
    j["pass"] = rep.pass;
    j["observed"] = report_round(rep.observed);
    j["tolerance"] = report_round(rep.tolerance);
    j["detail"] = rep.detail;
    if (!rep.evidence.empty()) {
        ordered_json ev = ordered_json::array();
        for (const auto& [k, v] : rep.evidence) {
            ordered_json q;
            q["name"] = k;
            q["value"] = report_round(v);
            ev.push_back(std::move(q));
        }
        j["evidence"] = std::move(ev);
    }
    return j;
}

ordered_json analyze_report(const SequenceSpec& spec, const RunOptions& options) {
    const auto rep = check_equivalence(spec, options.horizon);
    return to_json(rep);
}

ordered_json certify_report(const SequenceSpec& spec, const RunOptions& options) {
    ordered_json j;

    // Lower-bound evidence: geometric grid search, plus the first-digit block
    // systems when they apply (they are the sharp ones there).
    auto search = search_lower_bound(spec, default_ratio_grid(), default_scale_grid(),
                                     options.interval_terms);
    double lower = search.best;
    std::string witness = "geometric:r=" + std::to_string(search.ratio) +
                          ",s=" + std::to_string(search.scale);
    {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "geometric:r=%.12g,s=%.12g", search.ratio, search.scale);
        witness = buf;
    }
    ordered_json evaluated = ordered_json::array();
    for (const auto& e : search.evaluated) {
        ordered_json q;
        q["system"] = e.system;
        q["ell_liminf"] = report_round(e.value);
        evaluated.push_back(std::move(q));
    }
    if (const auto* f = std::get_if<FirstDigit>(&spec.family())) {
        const std::vector<IntervalSystem> paper = {
            IntervalSystem::first_digit_blocks(f->digit, f->base),
            IntervalSystem::decade_tail(f->digit, f->base)};
        const auto lb = bm_lower_bound(spec, paper, 14);
        for (const auto& e : lb.evaluated) {
            ordered_json q;
            q["system"] = e.system;
            q["ell_liminf"] = report_round(e.value);
            evaluated.push_back(std::move(q));
        }
        if (lb.best > lower) {
            lower = lb.best;
            witness = lb.witness_system;
        }
    }
    ordered_json lower_j;
    lower_j["best"] = report_round(lower);
    lower_j["witness_system"] = witness;
    lower_j["evaluated"] = std::move(evaluated);
    lower_j["kind"] = "finite-scale evidence";
    j["lower_bound"] = std::move(lower_j);

    // Upper-bound certificate (auto strategy).
    UpperBoundOptions up;
    up.gap_horizon = options.gap_horizon;
    up.series_horizon = options.series_horizon;
    ordered_json upper_j;
    double upper = std::numeric_limits<double>::quiet_NaN();
    try {
        const auto rep = bm_upper_bound(spec, up);
        upper_j["gap_liminf"] = to_json(rep.gaps);
        ordered_json attempts = ordered_json::array();
        for (const auto& cert : rep.attempts) attempts.push_back(to_json(cert));
        upper_j["attempts"] = std::move(attempts);
        if (rep.best) {
            upper = rep.best->a;
            upper_j["certificate"] = to_json(*rep.best);
        } else {
            upper_j["certificate"] = nullptr;
            upper_j["note"] = "no convergent-like certificate at these horizons";
        }
    } catch (const Error& e) {
        if (e.code() != ErrorCode::no_certificate) throw;
        upper_j["certificate"] = nullptr;
        upper_j["note"] = std::string(e.what()) + " (b possibly infinite)";
    }
    j["upper_bound"] = std::move(upper_j);

    ordered_json bracket;
    bracket["lower"] = report_round(lower);
    if (std::isnan(upper)) {
        bracket["upper"] = nullptr;
    } else {
        bracket["upper"] = report_round(upper);
        bracket["width"] = report_round(upper - lower);
    }
    j["bracket"] = std::move(bracket);
    return j;
}

ordered_json intervals_report(const SequenceSpec& spec, const std::string& system_text,
                              const RunOptions& options) {
    const auto system = IntervalSystem::parse(system_text);
    ordered_json j;
    j["system"] = system.render();
    const auto cls = classify(system, std::max<std::int64_t>(10, options.interval_terms));
    auto cj = to_json(cls);
    for (auto& [key, value] : cj.items()) j[key] = value;
    j["ell"] = to_json(ell_estimate(system, spec, options.interval_terms));
    return j;
}

WitnessIndices parse_witness(const std::string& text) {
    if (text.empty() || text == "identity") return witness_identity();
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon == std::string::npos ? text.size() : colon);
    std::map<std::string, double> kv;
    std::vector<std::int64_t> list;
    if (colon != std::string::npos) {
        std::size_t pos = colon + 1;
        if (kind == "custom") {
            std::string rest = text.substr(pos);
            std::size_t start = 0;
            while (start <= rest.size()) {
                auto next = rest.find(';', start);
                if (next == std::string::npos) next = rest.size();
                const std::string tok = rest.substr(start, next - start);
                std::int64_t v = 0;
                const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
                if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
                    fail(ErrorCode::parse_error, "bad custom witness index '" + tok + "'");
                list.push_back(v);
                start = next + 1;
            }
        } else {
            while (pos < text.size()) {
                auto next = text.find(',', pos);
                if (next == std::string::npos) next = text.size();
                const std::string item = text.substr(pos, next - pos);
                const auto eq = item.find('=');
                if (eq == std::string::npos)
                    fail(ErrorCode::parse_error, "witness: expected key=value at '" + item + "'");
                double v = 0;
                const std::string val = item.substr(eq + 1);
                const auto res = std::from_chars(val.data(), val.data() + val.size(), v);
                if (res.ec != std::errc() || res.ptr != val.data() + val.size())
                    fail(ErrorCode::parse_error, "witness: bad number '" + val + "'");
                kv[item.substr(0, eq)] = v;
                pos = next + 1;
            }
        }
    }
    if (kind == "shifted") {
        if (!kv.count("ell")) fail(ErrorCode::parse_error, "shifted witness requires ell=");
        return witness_shifted_floor(kv.at("ell"));
    }
    if (kind == "gap") {
        if (!kv.count("ell") || !kv.count("eps"))
            fail(ErrorCode::parse_error, "gap witness requires ell= and eps=");
        return witness_gap_floor(kv.at("ell"), kv.at("eps"));
    }
    if (kind == "custom") {
        if (list.empty()) fail(ErrorCode::parse_error, "custom witness requires indices");
        return witness_custom(std::move(list));
    }
    fail(ErrorCode::parse_error, "unknown witness '" + text + "'");
}

ordered_json series_report(const SequenceSpec& spec, const std::string& a_text,
                           const std::string& witness_text, const RunOptions& options) {
    const Rational a = parse_rational(a_text);
    if (a.num < 0) fail(ErrorCode::domain_error, "candidate density a must be >= 0");
    const auto witness = parse_witness(witness_text);
    const auto checkpoints =
        options.checkpoints.empty() ? default_checkpoints(options.series_horizon) : options.checkpoints;
    return to_json(series_partial(spec, a, witness, checkpoints));
}

std::vector<Rational> parse_rational_grid(const std::string& text) {
    std::vector<Rational> grid;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto next = text.find(';', start);
        if (next == std::string::npos) next = text.size();
        const std::string tok = text.substr(start, next - start);
        if (!tok.empty()) grid.push_back(parse_rational(tok));
        start = next + 1;
    }
    if (grid.empty()) fail(ErrorCode::parse_error, "empty rational grid");
    return grid;
}

ordered_json rescale_scan_report(const SequenceSpec& lambda, const SequenceSpec& mu,
                                 std::span<const Rational> grid, const RunOptions& options) {
    const auto checkpoints =
        options.checkpoints.empty() ? default_checkpoints(options.series_horizon) : options.checkpoints;
    const auto scan = ell_unique_scan(lambda, mu, grid, checkpoints);
    ordered_json j;
    ordered_json per = ordered_json::array();
    for (const auto& rep : scan.per_ell) {
        ordered_json q;
        q["ell"] = rep.ell.str();
        q["verdict"] = verdict_name(rep.verdict);
        q["S_max"] = report_round(rep.partial_sums.back().sum);
        if (rep.implied_relation) q["implied"] = *rep.implied_relation;
        per.push_back(std::move(q));
    }
    j["per_ell"] = std::move(per);
    ordered_json conv = ordered_json::array();
    for (const auto& ell : scan.convergent) conv.push_back(ell.str());
    j["convergent"] = std::move(conv);
    j["unique"] = scan.unique;
    if (!scan.unique)
        j["note"] = "more than one convergent-like ell: rescaling theorem preconditions "
                    "(b in (0, inf)) violated";
    if (scan.sigma_proxy) j["sigma_proxy"] = scan.sigma_proxy->str();
    if (scan.tau_proxy) j["tau_proxy"] = scan.tau_proxy->str();
    return j;
}

ordered_json laws_report(const std::optional<SequenceSpec>& spec, const RunOptions& options) {
    const auto reports = run_law_suite(spec, options.only, options.seed, options.tolerance);
    ordered_json arr = ordered_json::array();
    for (const auto& rep : reports) arr.push_back(to_json(rep));
    ordered_json j;
    j["laws"] = std::move(arr);
    j["all_pass"] = all_laws_pass(reports);
    return j;
}

}  // namespace bmd
