#pragma once

// Run records and iteration traces: the machine-readable layer between solver
// runs and report tables.
//
// Traces are JSON lines, one object per iteration, fixed keys
//   {"iter", "objective", "eta", "step_norm", "overlap", "x"(optional)}.
// "overlap" is 0 for classical solvers, which have no filtered target state.
//
// accuracy% = 100 * (L_init - L_final) / (L_init - L_opt), clamped to [0,100].
// When L_init equals L_opt the scale degenerates: the run scores 100 if it
// held the optimum, else 0.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gnqa/common.hpp"

namespace gnqa {

using json = nlohmann::ordered_json;

struct TraceRow {
    int iter = 0;
    double objective = 0.0;
    double eta = 0.0;
    double step_norm = 0.0;
    double overlap = 0.0;
    std::optional<std::string> x;  // rounded bit pattern, variable 0 first
};

inline void write_trace_jsonl(const std::string& path, const std::vector<TraceRow>& rows) {
    std::ofstream out(path);
    if (!out) throw GnqaError("trace: cannot open " + path);
    for (const TraceRow& r : rows) {
        json j;
        j["iter"] = r.iter;
        j["objective"] = r.objective;
        j["eta"] = r.eta;
        j["step_norm"] = r.step_norm;
        j["overlap"] = r.overlap;
        if (r.x) j["x"] = *r.x;
        out << j.dump() << "\n";
    }
    if (!out) throw GnqaError("trace: write failure on " + path);
}

inline std::vector<TraceRow> read_trace_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GnqaError("trace: cannot open " + path);
    std::vector<TraceRow> rows;
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const std::exception& e) {
            throw ParseError(std::string("trace: ") + e.what(), no, 1);
        }
        TraceRow r;
        r.iter = j.value("iter", 0);
        r.objective = j.value("objective", 0.0);
        r.eta = j.value("eta", 0.0);
        r.step_norm = j.value("step_norm", 0.0);
        r.overlap = j.value("overlap", 0.0);
        if (j.contains("x")) r.x = j["x"].get<std::string>();
        rows.push_back(std::move(r));
    }
    return rows;
}

/// FNV-1a over a file's bytes; the instance fingerprint stored in records.
inline std::string file_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GnqaError("hash: cannot open " + path);
    std::uint64_t h = 14695981039346656037ull;
    char buf[4096];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ull;
        }
        if (!in) break;
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

struct RunRecord {
    std::string instance;
    std::string instance_hash;
    std::string family;
    int n = 0;
    std::uint64_t num_optima = 0;  // brute-force count; 0 when unverified
    std::string method;            // gd | newton | natgrad | gnqa | gnqa-fixed
    std::string transform;         // empty for classical methods
    double eta = 0.0;
    int max_iters = 0;
    double tol = 0.0;
    std::uint64_t seed = 0;
    std::string trace;  // path, empty if not written
    std::string final_x;
    std::string verdict = "unverified";  // optimal | suboptimal | unverified
    double gap = 0.0;                    // objective above optimum, when verified
    int iterations = 0;
    double objective_init = 0.0;
    double objective_final = 0.0;
    std::optional<double> objective_opt;
    double relative_error = 0.0;
    double accuracy_pct = 0.0;
    double wall_ms = 0.0;
};

inline double relative_error_of(double final_obj, double opt) {
    return opt != 0.0 ? std::abs((final_obj - opt) / opt) : std::abs(final_obj - opt);
}

inline double accuracy_of(double init, double final_obj, double opt) {
    const double denom = init - opt;
    if (std::abs(denom) < 1e-15) return final_obj <= opt + 1e-9 ? 100.0 : 0.0;
    return std::clamp(100.0 * (init - final_obj) / denom, 0.0, 100.0);
}

inline json to_json(const RunRecord& r) {
    json j;
    j["instance"] = r.instance;
    j["instance_hash"] = r.instance_hash;
    j["family"] = r.family;
    j["n"] = r.n;
    j["num_optima"] = r.num_optima;
    j["method"] = r.method;
    j["transform"] = r.transform;
    j["eta"] = r.eta;
    j["max_iters"] = r.max_iters;
    j["tol"] = r.tol;
    j["seed"] = r.seed;
    j["trace"] = r.trace;
    j["final_x"] = r.final_x;
    j["verdict"] = r.verdict;
    j["gap"] = r.gap;
    j["iterations"] = r.iterations;
    j["objective_init"] = r.objective_init;
    j["objective_final"] = r.objective_final;
    if (r.objective_opt) j["objective_opt"] = *r.objective_opt;
    else j["objective_opt"] = nullptr;
    j["relative_error"] = r.relative_error;
    j["accuracy_pct"] = r.accuracy_pct;
    j["wall_ms"] = r.wall_ms;
    return j;
}

inline RunRecord run_record_from_json(const json& j) {
    RunRecord r;
    r.instance = j.value("instance", "");
    r.instance_hash = j.value("instance_hash", "");
    r.family = j.value("family", "");
    r.n = j.value("n", 0);
    r.num_optima = j.value("num_optima", std::uint64_t{0});
    r.method = j.value("method", "");
    r.transform = j.value("transform", "");
    r.eta = j.value("eta", 0.0);
    r.max_iters = j.value("max_iters", 0);
    r.tol = j.value("tol", 0.0);
    r.seed = j.value("seed", std::uint64_t{0});
    r.trace = j.value("trace", "");
    r.final_x = j.value("final_x", "");
    r.verdict = j.value("verdict", "unverified");
    r.gap = j.value("gap", 0.0);
    r.iterations = j.value("iterations", 0);
    r.objective_init = j.value("objective_init", 0.0);
    r.objective_final = j.value("objective_final", 0.0);
    if (j.contains("objective_opt") && !j["objective_opt"].is_null())
        r.objective_opt = j["objective_opt"].get<double>();
    r.relative_error = j.value("relative_error", 0.0);
    r.accuracy_pct = j.value("accuracy_pct", 0.0);
    r.wall_ms = j.value("wall_ms", 0.0);
    return r;
}

inline void save_run_record(const RunRecord& r, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw GnqaError("record: cannot open " + path);
    out << to_json(r).dump(2) << "\n";
    if (!out) throw GnqaError("record: write failure on " + path);
}

inline RunRecord load_run_record(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GnqaError("record: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError(std::string("record: ") + e.what(), 1, 1);
    }
    return run_record_from_json(j);
}

namespace detail {

inline std::string fmt_g(double v, const char* fmt = "%.3g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

inline void sort_report_rows(std::vector<RunRecord>& rows) {
    std::stable_sort(rows.begin(), rows.end(), [](const RunRecord& a, const RunRecord& b) {
        if (a.n != b.n) return a.n < b.n;
        if (a.family != b.family) return a.family < b.family;
        return a.method < b.method;
    });
}

inline const char* accuracy_header_note() {
    return "accuracy% = 100 * (L_init - L_final) / (L_init - L_opt), clamped to [0, 100]; "
           "relative error = |(L_final - L_opt)/L_opt| (absolute when L_opt = 0); "
           "rows without a brute-force verdict stay \"unverified\"";
}

}  // namespace detail

inline std::string build_report_markdown(std::vector<RunRecord> rows) {
    detail::sort_report_rows(rows);
    std::ostringstream out;
    out << "<!-- " << detail::accuracy_header_note() << " -->\n";
    out << "| family | N | #solutions | method | iterations | relative error | accuracy% |\n";
    out << "|---|---|---|---|---|---|---|\n";
    for (const RunRecord& r : rows) {
        out << "| " << r.family << " | " << r.n << " | ";
        if (r.verdict == "unverified") out << "unverified";
        else out << r.num_optima;
        out << " | " << r.method << " | " << r.iterations << " | "
            << detail::fmt_g(r.relative_error) << " | " << detail::fmt_g(r.accuracy_pct, "%.1f")
            << " |\n";
    }
    return out.str();
}

inline std::string build_report_csv(std::vector<RunRecord> rows) {
    detail::sort_report_rows(rows);
    std::ostringstream out;
    out << "# " << detail::accuracy_header_note() << "\n";
    out << "family,N,solutions,method,iterations,relative_error,accuracy_pct\n";
    for (const RunRecord& r : rows) {
        out << r.family << "," << r.n << ",";
        if (r.verdict == "unverified") out << "unverified";
        else out << r.num_optima;
        out << "," << r.method << "," << r.iterations << "," << detail::fmt_g(r.relative_error)
            << "," << detail::fmt_g(r.accuracy_pct, "%.1f") << "\n";
    }
    return out.str();
}

}  // namespace gnqa
