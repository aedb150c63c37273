#include "bmdensity.h"

#include <cstring>
#include <new>
#include <string>

#include "bmd/error.hpp"
#include "bmd/report.hpp"
#include "bmd/sequence.hpp"

struct bmd_sequence {
    bmd::SequenceSpec spec;
};

namespace {

thread_local std::string g_last_error;

bmd_status map_code(bmd::ErrorCode code) {
    switch (code) {
        case bmd::ErrorCode::parse_error: return BMD_ERR_PARSE;
        case bmd::ErrorCode::domain_error: return BMD_ERR_DOMAIN;
        case bmd::ErrorCode::range_error: return BMD_ERR_RANGE;
        case bmd::ErrorCode::overflow: return BMD_ERR_OVERFLOW;
        case bmd::ErrorCode::invalid_system: return BMD_ERR_INVALID_SYSTEM;
        case bmd::ErrorCode::no_certificate: return BMD_ERR_NO_CERTIFICATE;
        case bmd::ErrorCode::no_profile: return BMD_ERR_NO_PROFILE;
        case bmd::ErrorCode::io_error: return BMD_ERR_IO;
        case bmd::ErrorCode::invalid_argument: return BMD_ERR_INVALID_ARGUMENT;
    }
    return BMD_ERR_INTERNAL;
}

template <typename Fn>
bmd_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return BMD_OK;
    } catch (const bmd::Error& e) {
        g_last_error = e.what();
        return map_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return BMD_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return BMD_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

bmd_status require(bool cond, const char* what) {
    if (cond) return BMD_OK;
    g_last_error = what;
    return BMD_ERR_INVALID_ARGUMENT;
}

bmd_status emit_report(const char* command, const bmd_sequence* seq, const char* options_json,
                       char** out_json,
                       bmd::ordered_json (*build)(const bmd::SequenceSpec&, const bmd::RunOptions&)) {
    if (auto rc = require(seq && out_json, "null argument"); rc != BMD_OK) return rc;
    return guarded([&] {
        const auto options = bmd::RunOptions::from_json_text(options_json);
        auto doc = bmd::envelope(command, options, seq->spec.render(), build(seq->spec, options));
        *out_json = dup_string(doc.dump(2));
    });
}

}  // namespace

extern "C" {

const char* bmd_version(void) { return bmd::kToolVersion; }

const char* bmd_status_name(bmd_status status) {
    switch (status) {
        case BMD_OK: return "ok";
        case BMD_ERR_PARSE: return "parse-error";
        case BMD_ERR_DOMAIN: return "domain-error";
        case BMD_ERR_RANGE: return "range-error";
        case BMD_ERR_OVERFLOW: return "overflow";
        case BMD_ERR_INVALID_SYSTEM: return "invalid-system";
        case BMD_ERR_NO_CERTIFICATE: return "no-certificate";
        case BMD_ERR_NO_PROFILE: return "no-profile";
        case BMD_ERR_IO: return "io-error";
        case BMD_ERR_INVALID_ARGUMENT: return "invalid-argument";
        case BMD_ERR_INTERNAL: return "internal-error";
    }
    return "unknown";
}

const char* bmd_last_error_message(void) { return g_last_error.c_str(); }

void bmd_free_string(char* text) { delete[] text; }

bmd_status bmd_sequence_create(const char* spec_text, bmd_sequence** out) {
    if (auto rc = require(spec_text && out, "null argument"); rc != BMD_OK) return rc;
    return guarded([&] { *out = new bmd_sequence{bmd::SequenceSpec::parse(spec_text)}; });
}

void bmd_sequence_free(bmd_sequence* seq) { delete seq; }

bmd_status bmd_sequence_render(const bmd_sequence* seq, char** out_text) {
    if (auto rc = require(seq && out_text, "null argument"); rc != BMD_OK) return rc;
    return guarded([&] { *out_text = dup_string(seq->spec.render()); });
}

bmd_status bmd_sequence_term(const bmd_sequence* seq, int64_t n, double* out) {
    if (auto rc = require(seq && out, "null argument"); rc != BMD_OK) return rc;
    return guarded([&] { *out = seq->spec.term(n); });
}

bmd_status bmd_sequence_counting(const bmd_sequence* seq, double t, int64_t* out) {
    if (auto rc = require(seq && out, "null argument"); rc != BMD_OK) return rc;
    return guarded([&] { *out = seq->spec.counting(t); });
}

bmd_status bmd_sequence_count_in_interval(const bmd_sequence* seq, double a, double b,
                                          int64_t* out) {
    if (auto rc = require(seq && out, "null argument"); rc != BMD_OK) return rc;
    return guarded([&] { *out = seq->spec.count_in_interval(a, b); });
}

bmd_status bmd_sequence_interpolant(const bmd_sequence* seq, double x, double* out) {
    if (auto rc = require(seq && out, "null argument"); rc != BMD_OK) return rc;
    return guarded([&] { *out = seq->spec.interpolant(x); });
}

bmd_status bmd_sequence_interpolant_inverse(const bmd_sequence* seq, double y, double* out) {
    if (auto rc = require(seq && out, "null argument"); rc != BMD_OK) return rc;
    return guarded([&] { *out = seq->spec.interpolant_inverse(y); });
}

bmd_status bmd_analyze(const bmd_sequence* seq, const char* options_json, char** out_json) {
    return emit_report("analyze", seq, options_json, out_json, bmd::analyze_report);
}

bmd_status bmd_certify(const bmd_sequence* seq, const char* options_json, char** out_json) {
    return emit_report("certify", seq, options_json, out_json, bmd::certify_report);
}

bmd_status bmd_intervals(const bmd_sequence* seq, const char* system_text,
                         const char* options_json, char** out_json) {
    if (auto rc = require(seq && system_text && out_json, "null argument"); rc != BMD_OK) return rc;
    return guarded([&] {
        const auto options = bmd::RunOptions::from_json_text(options_json);
        auto doc = bmd::envelope("intervals", options, seq->spec.render(),
                                 bmd::intervals_report(seq->spec, system_text, options));
        *out_json = dup_string(doc.dump(2));
    });
}

bmd_status bmd_series(const bmd_sequence* seq, const char* a_text, const char* witness_text,
                      const char* options_json, char** out_json) {
    if (auto rc = require(seq && a_text && out_json, "null argument"); rc != BMD_OK) return rc;
    return guarded([&] {
        const auto options = bmd::RunOptions::from_json_text(options_json);
        auto doc = bmd::envelope(
            "series", options, seq->spec.render(),
            bmd::series_report(seq->spec, a_text, witness_text ? witness_text : "identity", options));
        *out_json = dup_string(doc.dump(2));
    });
}

bmd_status bmd_rescale_scan(const bmd_sequence* lambda, const bmd_sequence* mu,
                            const char* grid_text, const char* options_json, char** out_json) {
    if (auto rc = require(lambda && mu && grid_text && out_json, "null argument"); rc != BMD_OK)
        return rc;
    return guarded([&] {
        const auto options = bmd::RunOptions::from_json_text(options_json);
        const auto grid = bmd::parse_rational_grid(grid_text);
        auto results = bmd::rescale_scan_report(lambda->spec, mu->spec, grid, options);
        auto doc = bmd::envelope("rescale-scan", options,
                                 lambda->spec.render() + " vs " + mu->spec.render(),
                                 std::move(results));
        *out_json = dup_string(doc.dump(2));
    });
}

bmd_status bmd_laws(const bmd_sequence* seq, const char* options_json, int* out_all_pass,
                    char** out_json) {
    if (auto rc = require(out_json != nullptr, "null argument"); rc != BMD_OK) return rc;
    return guarded([&] {
        const auto options = bmd::RunOptions::from_json_text(options_json);
        std::optional<bmd::SequenceSpec> spec;
        std::optional<std::string> spec_text;
        if (seq) {
            spec = seq->spec;
            spec_text = seq->spec.render();
        }
        auto results = bmd::laws_report(spec, options);
        if (out_all_pass) *out_all_pass = results.at("all_pass").get<bool>() ? 1 : 0;
        auto doc = bmd::envelope("laws", options, spec_text, std::move(results));
        *out_json = dup_string(doc.dump(2));
    });
}

}  // extern "C"
