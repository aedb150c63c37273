// bmd: command-line front end for the bmdensity shared library.
//
// Exit codes: 0 success / all laws pass, 1 law failure, 2 usage or parse
// errors, 3 numeric overflow (64-bit-safe horizon exceeded).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bmdensity.h"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitLawFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitOverflow = 3;

int exit_code_for(bmd_status status) {
    switch (status) {
        case BMD_OK: return kExitOk;
        case BMD_ERR_OVERFLOW: return kExitOverflow;
        default: return kExitUsage;
    }
}

struct GlobalOptions {
    std::string horizon_text;
    std::string format = "json";
    std::string out_path;
    std::vector<std::string> tolerance;
    std::uint64_t seed = 12345;
};

// Horizon accepts scientific notation ("1e6"); the 1e15 cap is enforced by
// the library, but an early check gives the overflow exit code directly.
int parse_horizon(const std::string& text, long long& out) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || !(v >= 100)) {
        std::cerr << "bmd: invalid --horizon '" << text << "' (need a number >= 100)\n";
        return kExitUsage;
    }
    if (v > 1e15) {
        std::cerr << "bmd: --horizon " << text << " exceeds the 64-bit-safe cap 1e15\n";
        return kExitOverflow;
    }
    out = static_cast<long long>(v);
    return kExitOk;
}

int build_options_json(const GlobalOptions& g, const std::string& only, bool series_scope,
                       std::string& out) {
    ordered_json j;
    if (!g.horizon_text.empty()) {
        long long horizon = 0;
        if (const int rc = parse_horizon(g.horizon_text, horizon); rc != kExitOk) return rc;
        j["horizon"] = horizon;
        // For the series command the horizon names the partial-sum length.
        if (series_scope) j["series_horizon"] = horizon;
    }
    j["seed"] = g.seed;
    if (!only.empty()) j["only"] = only;
    if (!g.tolerance.empty()) {
        ordered_json t;
        for (const auto& kv : g.tolerance) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0) {
                std::cerr << "bmd: --tolerance expects KEY=VAL, got '" << kv << "'\n";
                return kExitUsage;
            }
            char* end = nullptr;
            const double v = std::strtod(kv.c_str() + eq + 1, &end);
            if (*end != '\0') {
                std::cerr << "bmd: bad tolerance value in '" << kv << "'\n";
                return kExitUsage;
            }
            t[kv.substr(0, eq)] = v;
        }
        j["tolerance"] = t;
    }
    out = j.dump();
    return kExitOk;
}

void flatten(const ordered_json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items())
            flatten(value, prefix.empty() ? key : prefix + "." + key, rows);
    } else if (j.is_array()) {
        std::size_t i = 0;
        for (const auto& value : j) flatten(value, prefix + "[" + std::to_string(i++) + "]", rows);
    } else {
        rows.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

// CSV: density reports get the documented n,ratio columns; everything else a
// flattened key,value listing.
std::string to_csv(const ordered_json& doc) {
    std::string out;
    const auto& results = doc.at("results");
    if (doc.at("command") == "analyze") {
        out += "method,n,ratio\n";
        for (const char* method : {"by_counting", "by_index"}) {
            const auto& est = results.at(method);
            for (const auto& pt : est.at("checkpoints"))
                out += est.at("method").get<std::string>() + "," + pt.at("n").dump() + "," +
                       pt.at("ratio").dump() + "\n";
        }
        return out;
    }
    out += "key,value\n";
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(results, "", rows);
    for (const auto& [k, v] : rows) {
        std::string escaped = v;
        if (escaped.find(',') != std::string::npos) escaped = "\"" + escaped + "\"";
        out += k + "," + escaped + "\n";
    }
    return out;
}

std::string to_table(const ordered_json& doc) {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(doc.at("results"), "", rows);
    std::size_t width = 0;
    for (const auto& [k, v] : rows) width = std::max(width, k.size());
    std::string out = doc.at("tool").get<std::string>() + " " +
                      doc.at("version").get<std::string>() + " " +
                      doc.at("command").get<std::string>() + "\n";
    for (const auto& [k, v] : rows) {
        out += "  " + k + std::string(width - k.size() + 2, ' ') + v + "\n";
    }
    return out;
}

int emit(const GlobalOptions& g, const char* json_text) {
    const ordered_json doc = ordered_json::parse(json_text);
    std::string body;
    if (g.format == "json") {
        body = doc.dump(2) + "\n";
    } else if (g.format == "csv") {
        body = to_csv(doc);
    } else if (g.format == "table") {
        body = to_table(doc);
    } else {
        std::cerr << "bmd: unknown --format '" << g.format << "' (json|csv|table)\n";
        return kExitUsage;
    }
    if (g.out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(g.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "bmd: cannot write '" << g.out_path << "'\n";
            return kExitUsage;
        }
        out << body;
    }
    return kExitOk;
}

int fail_with(bmd_status status) {
    std::cerr << "bmd: " << bmd_status_name(status) << ": " << bmd_last_error_message() << "\n";
    return exit_code_for(status);
}

struct SequenceHandle {
    bmd_sequence* seq = nullptr;
    ~SequenceHandle() { bmd_sequence_free(seq); }
};

struct StringHandle {
    char* text = nullptr;
    ~StringHandle() { bmd_free_string(text); }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"asymptotic and Beurling-Malliavin density analysis for increasing sequences"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may appear after the subcommand

    GlobalOptions g;
    app.add_option("--horizon", g.horizon_text, "sampling horizon (scientific notation ok)");
    app.add_option("--format", g.format, "output format: json|csv|table")->capture_default_str();
    app.add_option("--out", g.out_path, "write the report to a file");
    app.add_option("--tolerance", g.tolerance, "override a named tolerance, KEY=VAL")
        ->take_all();
    app.add_option("--seed", g.seed, "seed for randomized law streams")->capture_default_str();

    std::string spec_text, system_text, a_text, witness_text = "identity", only;

    auto* analyze = app.add_subcommand("analyze", "density estimates by both methods");
    analyze->add_option("spec", spec_text, "sequence spec")->required();

    auto* certify = app.add_subcommand("certify", "BM-density bracket: interval lower bound + series upper certificate");
    certify->add_option("spec", spec_text, "sequence spec")->required();

    auto* intervals = app.add_subcommand("intervals", "classify an interval system and compute its ell_I");
    intervals->add_option("spec", spec_text, "sequence spec")->required();
    intervals->add_option("--system", system_text, "geometric:r=..,s=.. | firstdigit:p=.. | decade:p=..")
        ->required();

    auto* series = app.add_subcommand("series", "partial sums of sum |1/lambda_k - a/n_k|");
    series->add_option("spec", spec_text, "sequence spec")->required();
    series->add_option("--a", a_text, "candidate density (rational or decimal)")->required();
    series->add_option("--witness", witness_text,
                       "identity | shifted:ell=X | gap:ell=X,eps=Y | custom:n1;n2;...")
        ->capture_default_str();

    auto* laws = app.add_subcommand("laws", "run the law suite (full built-in roster without a spec)");
    laws->add_option("spec", spec_text, "sequence spec (optional)");
    laws->add_option("--only", only, "filter laws by name substring");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    std::string options_json;
    if (const int rc = build_options_json(g, only, series->parsed(), options_json); rc != kExitOk)
        return rc;

    SequenceHandle seq;
    if (!spec_text.empty()) {
        if (const auto rc = bmd_sequence_create(spec_text.c_str(), &seq.seq); rc != BMD_OK)
            return fail_with(rc);
    }

    StringHandle report;
    bmd_status status = BMD_OK;
    int all_pass = 1;
    if (analyze->parsed()) {
        status = bmd_analyze(seq.seq, options_json.c_str(), &report.text);
    } else if (certify->parsed()) {
        status = bmd_certify(seq.seq, options_json.c_str(), &report.text);
    } else if (intervals->parsed()) {
        status = bmd_intervals(seq.seq, system_text.c_str(), options_json.c_str(), &report.text);
    } else if (series->parsed()) {
        status = bmd_series(seq.seq, a_text.c_str(), witness_text.c_str(), options_json.c_str(),
                            &report.text);
    } else if (laws->parsed()) {
        status = bmd_laws(seq.seq, options_json.c_str(), &all_pass, &report.text);
    }
    if (status != BMD_OK) return fail_with(status);

    if (const int rc = emit(g, report.text); rc != kExitOk) return rc;
    if (laws->parsed() && all_pass == 0) return kExitLawFailure;
    return kExitOk;
}
