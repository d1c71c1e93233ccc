#pragma once

// Command-line front end: instance generation, solver runs with JSONL traces
// and JSON run records, report tables, resolvent-order sweeps, and spectrum
// dumps. Everything lives behind run() so the test suite can drive the CLI
// in-process; tools/gnqa_cli.cpp is a three-line wrapper.
//
// Exit codes: 0 success, 2 usage or malformed input, 4 desk-limit,
// 3 any other numeric failure.
//
// Instance files use the upper-triangular quadratic format by default; a
// ".pubo" extension selects the polynomial format. The two on-disk layouts
// are not self-describing enough to sniff apart (a one-variable polynomial
// line is also a valid quadratic entry), so the extension is the contract.
//
// Verification enumerates the materialized 2^n diagonal, which is the same
// exhaustive check as per-assignment brute force but one vectorized pass.
// verdict/gap live on the solver's objective scale (the spin diagonal).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "gnqa/common.hpp"
#include "gnqa/gnqa.hpp"
#include "gnqa/optimizers.hpp"
#include "gnqa/problems.hpp"
#include "gnqa/records.hpp"

namespace gnqa {
namespace cli {

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kNumeric = 3;
constexpr int kDesk = 4;

// ---------------------------------------------------------------------------
// Instance loading

struct Instance {
    std::string path;
    bool is_pubo = false;
    QuboProblem qubo;
    PuboProblem pubo;
    std::string family;  // from the "# family=..." header comment, if present
    int n = 0;
};

namespace detail {

inline std::string sniff_family(const std::string& path) {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        std::size_t i = 0;
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size()) continue;
        if (line[i] != '#') break;  // first data line: no header comment
        const std::size_t pos = line.find("family=");
        if (pos == std::string::npos) continue;
        const std::size_t start = pos + 7;
        std::size_t end = start;
        while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
        return line.substr(start, end - start);
    }
    return "";
}

inline std::string bit_string(const std::vector<std::uint8_t>& bits) {
    std::string s(bits.size(), '0');
    for (std::size_t k = 0; k < bits.size(); ++k)
        if (bits[k]) s[k] = '1';
    return s;
}

inline std::uint64_t mask_of_bits(const std::vector<std::uint8_t>& bits) {
    std::uint64_t mask = 0;
    for (std::size_t k = 0; k < bits.size(); ++k)
        if (bits[k]) mask |= std::uint64_t{1} << k;
    return mask;
}

inline double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace detail

inline Instance load_instance(const std::string& path) {
    if (!std::filesystem::is_regular_file(path))
        throw ParseError("no such instance file: " + path, 1, 1);
    Instance ins;
    ins.path = path;
    ins.is_pubo = path.size() >= 5 && path.ends_with(".pubo");
    if (ins.is_pubo) {
        ins.pubo = load_pubo(path);
        ins.n = ins.pubo.n;
    } else {
        ins.qubo = load_qubo(path);
        ins.n = ins.qubo.n;
    }
    ins.family = detail::sniff_family(path);
    return ins;
}

// ---------------------------------------------------------------------------
// Trace rows

/// Final row carries the rounded assignment when every angle is committed.
inline std::vector<TraceRow> trace_rows(const GnqaResult& res) {
    std::vector<TraceRow> rows;
    rows.reserve(res.records.size());
    for (const GnqaIteration& it : res.records)
        rows.push_back({it.iter, it.objective, it.eta, it.step_norm, it.overlap, std::nullopt});
    if (auto bits = try_round(res.theta)) rows.back().x = detail::bit_string(*bits);
    return rows;
}

inline std::vector<TraceRow> trace_rows(const SolverTrace& tr) {
    std::vector<TraceRow> rows;
    rows.reserve(tr.records.size());
    for (const IterationRecord& it : tr.records)
        rows.push_back({it.iter, it.objective, it.eta, it.step_norm, 0.0, std::nullopt});
    if (auto bits = try_round(tr.theta)) rows.back().x = detail::bit_string(*bits);
    return rows;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateOptions {
    std::string family = "random_qubo";
    std::string preset;  // overrides family/size/... when set
    int size = 4;
    std::uint64_t seed = 0;
    int colors = 3;
    double density = 0.5;
    std::string variant;
    double penalty = 0.0;
    std::string out;
};

inline int cmd_generate(const GenerateOptions& o, std::ostream& out, std::ostream& err) {
    GeneratorSpec spec;
    if (!o.preset.empty()) {
        const Preset* p = find_preset(o.preset);
        if (!p) {
            err << "generate: unknown preset '" << o.preset << "' (run `gnqa presets`)\n";
            return kUsage;
        }
        spec = p->spec;
    } else {
        const auto fam = family_from_string(o.family);
        if (!fam) {
            err << "generate: unknown family '" << o.family
                << "'; valid: random_qubo maxcut number_partitioning set_packing "
                   "set_partitioning min_vertex_cover knapsack max2sat graph_coloring "
                   "qap tsp nqueens general01 sat2 sat3\n";
            return kUsage;
        }
        spec.family = *fam;
        spec.size = o.size;
        spec.colors = o.colors;
        spec.density = o.density;
        spec.variant = o.variant;
        spec.penalty = o.penalty;
        spec.seed = o.seed;
    }

    GeneratedProblem gp = generate(spec);
    if (gp.is_pubo && !o.out.ends_with(".pubo")) {
        err << "generate: " << gp.meta.family
            << " emits a degree-3 polynomial; use a .pubo output path\n";
        return kUsage;
    }
    if (!gp.is_pubo && o.out.ends_with(".pubo")) {
        err << "generate: " << gp.meta.family
            << " emits a quadratic instance; drop the .pubo extension\n";
        return kUsage;
    }
    if (gp.is_pubo)
        save(gp.pubo, o.out, &gp.meta);
    else
        save(gp.qubo, o.out, &gp.meta);
    out << "wrote " << o.out << " family=" << gp.meta.family << " n=" << gp.meta.n << " seed="
        << gp.meta.seed << "\n";
    return kOk;
}

// ---------------------------------------------------------------------------
// solve

struct SolveOptions {
    std::string instance;
    std::string method = "gnqa";  // gd | newton | natgrad | gnqa | gnqa-fixed
    std::string transform = "resolvent:8";
    double rho_rel_err = 0.1;
    double eta = 0.0;   // 0 selects the per-method default
    int max_iters = 0;  // 0 selects 50 (gnqa) / 200 (classical)
    double tol = 0.0;   // 0 selects 1e-9 objective (gnqa) / 1e-8 gradient (classical)
    std::string trace;
    std::string record;
    bool verify = false;
    std::uint64_t seed = 0;
    double jitter = 0.0;  // classical theta0 symmetry breaking
    double e0 = std::numeric_limits<double>::quiet_NaN();  // natgrad ground estimate
    std::string eval = "inner";                            // inner | expectation
};

namespace detail {

inline GnqaConfig make_gnqa_config(const SpectralTransform& t, bool fixed_eta, double eta,
                                   int max_iters, double tol, std::uint64_t seed,
                                   bool expectation) {
    GnqaConfig cfg;
    cfg.transform = t;
    cfg.eta_mode = fixed_eta ? GnqaConfig::EtaMode::Fixed : GnqaConfig::EtaMode::Variable;
    if (fixed_eta && eta > 0.0) cfg.fixed_eta = eta;
    cfg.max_iters = max_iters > 0 ? max_iters : 50;
    cfg.obj_rel_tol = tol > 0.0 ? tol : 1e-9;
    cfg.seed = seed;
    cfg.eval_mode =
        expectation ? GnqaConfig::EvalMode::Expectation : GnqaConfig::EvalMode::Inner;
    return cfg;
}

/// Calibration fills rho only when the spec left it open.
inline SpectralTransform resolve_rho(SpectralTransform t, const DiagonalOperator& d,
                                     double target_rel_err) {
    if (t.needs_rho() && !std::isfinite(t.rho)) t.rho = rho_calibrate(d, target_rel_err).rho;
    return t;
}

}  // namespace detail

inline int cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
    const bool is_gnqa = o.method == "gnqa" || o.method == "gnqa-fixed";
    const bool classical = o.method == "gd" || o.method == "newton" || o.method == "natgrad";
    if (!is_gnqa && !classical) {
        err << "solve: unknown method '" << o.method
            << "' (gd | newton | natgrad | gnqa | gnqa-fixed)\n";
        return kUsage;
    }

    Instance ins = load_instance(o.instance);
    if (ins.is_pubo && classical) {
        err << "solve: method '" << o.method
            << "' needs a quadratic instance; this file has degree-3 terms\n";
        return kUsage;
    }

    RunRecord rec;
    rec.instance = o.instance;
    rec.instance_hash = file_hash(o.instance);
    rec.family = ins.family.empty() ? "unknown" : ins.family;
    rec.n = ins.n;
    rec.method = o.method;
    rec.seed = o.seed;

    IsingHamiltonian H;
    if (!ins.is_pubo) H = to_ising(ins.qubo);

    // The 2^n diagonal is needed by the gnqa methods, by verification, and by
    // natgrad's default ground estimate; classical runs beyond the desk limit
    // never touch it.
    std::optional<DiagonalOperator> diag;
    auto ensure_diag = [&]() -> const DiagonalOperator& {
        if (!diag) diag = ins.is_pubo ? build_diagonal(ins.pubo) : build_diagonal(H);
        return *diag;
    };

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<double> theta;
    std::vector<TraceRow> rows;
    TerminalStatus status;

    if (is_gnqa) {
        const DiagonalOperator& d = ensure_diag();
        const SpectralTransform t =
            detail::resolve_rho(parse_transform(o.transform), d, o.rho_rel_err);
        const GnqaConfig cfg = detail::make_gnqa_config(
            t, o.method == "gnqa-fixed", o.eta, o.max_iters, o.tol, o.seed,
            o.eval == "expectation");
        const GnqaResult res = gnqa_solve(d, cfg);

        rec.transform = format_transform(t);
        rec.eta = cfg.eta_mode == GnqaConfig::EtaMode::Fixed ? cfg.fixed_eta : 0.0;
        rec.max_iters = cfg.max_iters;
        rec.tol = cfg.obj_rel_tol;
        rec.iterations = res.iterations;
        rec.objective_init = res.records.front().objective;
        rec.objective_final = res.objective;
        theta = res.theta;
        rows = trace_rows(res);
        status = res.status;
    } else {
        SolverConfig cfg;
        cfg.eta = o.eta;
        cfg.max_iters = o.max_iters > 0 ? o.max_iters : 200;
        cfg.grad_tol = o.tol > 0.0 ? o.tol : 1e-8;
        cfg.seed = o.seed;
        cfg.theta0_jitter = o.jitter;
        if (o.method == "natgrad")
            cfg.e0 = std::isfinite(o.e0) ? o.e0 : diagonal_min(ensure_diag());

        SolverTrace tr;
        if (o.method == "gd")
            tr = gradient_descent(H, gnqa::detail::center_start(ins.n), cfg);
        else if (o.method == "newton")
            tr = modified_newton(H, gnqa::detail::center_start(ins.n), cfg);
        else
            tr = natural_gradient(H, gnqa::detail::center_start(ins.n), cfg);

        rec.eta = cfg.eta > 0.0 ? cfg.eta : (o.method == "gd" ? 0.1 : 1.0);
        rec.max_iters = cfg.max_iters;
        rec.tol = cfg.grad_tol;
        rec.iterations = tr.iterations;
        rec.objective_init = tr.records.front().objective;
        rec.objective_final = tr.records.back().objective;
        theta = tr.theta;
        rows = trace_rows(tr);
        status = tr.status;
    }
    rec.wall_ms = detail::elapsed_ms(t0);

    const auto bits = try_round(theta);
    if (bits) rec.final_x = detail::bit_string(*bits);

    if (o.verify && ins.n <= desk_limit()) {
        const DiagonalOperator& d = ensure_diag();
        const double opt = diagonal_min(d);
        rec.objective_opt = opt;
        rec.num_optima = ground_degeneracy(d, 1e-9);
        rec.relative_error = relative_error_of(rec.objective_final, opt);
        rec.accuracy_pct = accuracy_of(rec.objective_init, rec.objective_final, opt);
        if (bits) {
            const double at_x = d.values[detail::mask_of_bits(*bits)];
            const double band = 1e-9 * std::max(1.0, std::abs(opt));
            if (at_x <= opt + band) {
                rec.verdict = "optimal";
            } else {
                rec.verdict = "suboptimal";
                rec.gap = at_x - opt;
            }
        }
    }

    if (!o.trace.empty()) {
        write_trace_jsonl(o.trace, rows);
        rec.trace = o.trace;
    }
    if (!o.record.empty())
        save_run_record(rec, o.record);
    else
        out << to_json(rec).dump(2) << "\n";

    err << "solve: " << o.method << " " << to_string(status) << " after " << rec.iterations
        << " iterations, objective " << rec.objective_final;
    if (rec.verdict != "unverified") err << ", verdict " << rec.verdict;
    err << "\n";
    return kOk;
}

// ---------------------------------------------------------------------------
// report

struct ReportOptions {
    std::string dir;
    std::string format = "markdown";  // markdown | csv
    std::string out;
};

inline int cmd_report(const ReportOptions& o, std::ostream& out, std::ostream& err) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(o.dir)) {
        err << "report: not a directory: " << o.dir << "\n";
        return kUsage;
    }
    std::vector<std::string> files;
    for (const auto& entry : fs::directory_iterator(o.dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        err << "report: no .json run records in " << o.dir << "\n";
        return kUsage;
    }

    std::vector<RunRecord> rows;
    rows.reserve(files.size());
    for (const std::string& f : files) rows.push_back(load_run_record(f));

    const std::string text =
        o.format == "csv" ? build_report_csv(std::move(rows)) : build_report_markdown(std::move(rows));
    if (o.out.empty()) {
        out << text;
    } else {
        std::ofstream f(o.out);
        if (!f) throw GnqaError("report: cannot open " + o.out);
        f << text;
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// sweep-p

struct SweepOptions {
    std::string instance;
    std::string p_list = "2,4,8,16";
    std::string transform = "resolvent:8";  // p overridden per sweep point
    double rho_rel_err = 0.1;
    std::string out_dir;
    int max_iters = 0;
    double tol = 0.0;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string eval = "inner";
};

namespace detail {

inline std::string p_label(double p) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", p);
    return buf;
}

}  // namespace detail

inline int cmd_sweep_p(const SweepOptions& o, std::ostream& out, std::ostream& err) {
    std::vector<double> ps;
    {
        std::stringstream ss(o.p_list);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item.empty()) continue;
            try {
                std::size_t used = 0;
                const double p = std::stod(item, &used);
                if (used != item.size() || !(p > 0.0)) throw std::invalid_argument(item);
                ps.push_back(p);
            } catch (const std::exception&) {
                err << "sweep-p: bad p value '" << item << "'\n";
                return kUsage;
            }
        }
    }
    if (ps.empty()) {
        err << "sweep-p: empty p list\n";
        return kUsage;
    }

    Instance ins = load_instance(o.instance);
    const DiagonalOperator d =
        ins.is_pubo ? build_diagonal(ins.pubo) : build_diagonal(to_ising(ins.qubo));

    // One calibration shared by every sweep point: rho and the sigma-based
    // normalization depend on the diagonal alone, so varying p moves only the
    // filter sharpness.
    const SpectralTransform base =
        detail::resolve_rho(parse_transform(o.transform), d, o.rho_rel_err);

    namespace fs = std::filesystem;
    fs::create_directories(o.out_dir);

    struct Row {
        double p = 0.0;
        int iterations = 0;
        TerminalStatus status = TerminalStatus::NotConverged;
        double objective = 0.0;
        std::string trace;
    };
    std::vector<Row> results(ps.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex error_mu;

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= ps.size() || failed.load()) break;
            try {
                SpectralTransform t = base;
                t.p = ps[i];
                const GnqaConfig cfg = detail::make_gnqa_config(
                    t, false, 0.0, o.max_iters, o.tol, o.seed, o.eval == "expectation");
                const GnqaResult res = gnqa_solve(d, cfg);
                const std::string label = detail::p_label(ps[i]);
                const std::string trace_path =
                    (fs::path(o.out_dir) / ("p" + label + ".jsonl")).string();
                write_trace_jsonl(trace_path, trace_rows(res));

                RunRecord rec;
                rec.instance = o.instance;
                rec.instance_hash = file_hash(o.instance);
                rec.family = ins.family.empty() ? "unknown" : ins.family;
                rec.n = ins.n;
                rec.method = "gnqa";
                rec.transform = format_transform(t);
                rec.max_iters = cfg.max_iters;
                rec.tol = cfg.obj_rel_tol;
                rec.seed = o.seed;
                rec.trace = trace_path;
                if (auto bits = try_round(res.theta)) rec.final_x = detail::bit_string(*bits);
                rec.iterations = res.iterations;
                rec.objective_init = res.records.front().objective;
                rec.objective_final = res.objective;
                save_run_record(rec, (fs::path(o.out_dir) / ("p" + label + ".json")).string());

                results[i] = {ps[i], res.iterations, res.status, res.objective, trace_path};
            } catch (...) {
                std::lock_guard<std::mutex> lk(error_mu);
                failed.store(true);
                if (first_error.empty()) {
                    try {
                        throw;
                    } catch (const std::exception& e) {
                        first_error = e.what();
                    } catch (...) {
                        first_error = "unknown error";
                    }
                }
                break;
            }
        }
    };

    const int jobs = std::max(1, std::min<int>(o.jobs, static_cast<int>(ps.size())));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw GnqaError("sweep-p: " + first_error);

    out << "p iterations status objective trace\n";
    char buf[64];
    for (const Row& r : results) {
        std::snprintf(buf, sizeof(buf), "%.17g", r.objective);
        out << detail::p_label(r.p) << " " << r.iterations << " " << to_string(r.status) << " "
            << buf << " " << r.trace << "\n";
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumOptions {
    std::string instance;
    std::string transform = "identity";
    double rho_rel_err = 0.1;
    std::uint64_t top = 0;
    std::string out;
};

inline int cmd_spectrum(const SpectrumOptions& o, std::ostream& out, std::ostream& err) {
    Instance ins = load_instance(o.instance);
    const DiagonalOperator d =
        ins.is_pubo ? build_diagonal(ins.pubo) : build_diagonal(to_ising(ins.qubo));
    const SpectralTransform t =
        detail::resolve_rho(parse_transform(o.transform), d, o.rho_rel_err);
    const EigenDistribution rep = eigen_distribution_report(t, d, o.top);

    std::ostringstream text;
    text << "# spectrum instance=" << o.instance << " n=" << ins.n << " transform="
         << format_transform(t) << "\n";
    text << "# transformed and raw are independently sorted, both descending;\n";
    text << "# dominance = transformed / max transformed.\n";
    text << "rank,basis_index,transformed,dominance,raw_desc\n";
    const double f0 = rep.transformed.empty() ? 0.0 : rep.transformed.front().first;
    char buf[3][32];
    for (std::size_t i = 0; i < rep.transformed.size(); ++i) {
        const double f = rep.transformed[i].first;
        std::snprintf(buf[0], sizeof(buf[0]), "%.17g", f);
        std::snprintf(buf[1], sizeof(buf[1]), "%.17g", f0 != 0.0 ? f / f0 : 0.0);
        std::snprintf(buf[2], sizeof(buf[2]), "%.17g", rep.raw_sorted_desc[i]);
        text << i << "," << rep.transformed[i].second << "," << buf[0] << "," << buf[1] << ","
             << buf[2] << "\n";
    }

    if (o.out.empty()) {
        out << text.str();
    } else {
        std::ofstream f(o.out);
        if (!f) throw GnqaError("spectrum: cannot open " + o.out);
        f << text.str();
    }
    err << "spectrum: " << rep.transformed.size() << " levels\n";
    return kOk;
}

// ---------------------------------------------------------------------------
// Dispatcher

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"diagonal-Hamiltonian QUBO/PUBO workbench"};
    app.name("gnqa");
    app.require_subcommand(1);

    GenerateOptions gen;
    auto* cg = app.add_subcommand("generate", "write a benchmark instance file");
    cg->add_option("--family", gen.family, "problem family")->capture_default_str();
    cg->add_option("--preset", gen.preset, "named preset (overrides family/size/seed)");
    cg->add_option("--size", gen.size, "total variable count")->capture_default_str();
    cg->add_option("--seed", gen.seed, "generator seed")->capture_default_str();
    cg->add_option("--colors", gen.colors, "graph_coloring palette size")->capture_default_str();
    cg->add_option("--density", gen.density, "edge/entry probability")->capture_default_str();
    cg->add_option("--variant", gen.variant, "graph variant (random|cycle|complete|wheel)");
    cg->add_option("--penalty", gen.penalty, "constraint penalty (0 = auto)")
        ->capture_default_str();
    cg->add_option("--out", gen.out, "output path (.pubo selects the polynomial format)")
        ->required();

    SolveOptions sol;
    auto* cs = app.add_subcommand("solve", "run one solver on one instance");
    cs->add_option("instance", sol.instance, "instance file")->required();
    cs->add_option("--method", sol.method, "gd | newton | natgrad | gnqa | gnqa-fixed")
        ->capture_default_str()
        ->check(CLI::IsMember({"gd", "newton", "natgrad", "gnqa", "gnqa-fixed"}));
    cs->add_option("--transform", sol.transform, "spectral filter, family:p[:key=value...]")
        ->capture_default_str();
    cs->add_option("--rho-rel-err", sol.rho_rel_err, "rho calibration target")
        ->capture_default_str();
    cs->add_option("--eta", sol.eta, "step size (0 = per-method default)")
        ->capture_default_str();
    cs->add_option("--max-iters", sol.max_iters, "0 = 50 for gnqa methods, 200 classical")
        ->capture_default_str();
    cs->add_option("--tol", sol.tol,
                   "0 = 1e-9 objective (gnqa methods), 1e-8 gradient (classical)")
        ->capture_default_str();
    cs->add_option("--trace", sol.trace, "write per-iteration JSONL here");
    cs->add_option("--record", sol.record, "write the run record here (default: stdout)");
    cs->add_flag("--verify", sol.verify, "exhaustive optimum check within the desk limit");
    cs->add_option("--seed", sol.seed, "solver seed")->capture_default_str();
    cs->add_option("--jitter", sol.jitter, "classical start-point jitter amplitude")
        ->capture_default_str();
    cs->add_option("--e0", sol.e0, "natgrad ground estimate (default: exact within desk)");
    cs->add_option("--eval", sol.eval, "gnqa pullback evaluation")
        ->capture_default_str()
        ->check(CLI::IsMember({"inner", "expectation"}));

    ReportOptions rep;
    auto* cr = app.add_subcommand("report", "tabulate a directory of run records");
    cr->add_option("--dir", rep.dir, "directory of .json run records")->required();
    cr->add_option("--format", rep.format, "markdown | csv")
        ->capture_default_str()
        ->check(CLI::IsMember({"markdown", "csv"}));
    cr->add_option("--out", rep.out, "output path (default: stdout)");

    SweepOptions swp;
    auto* cw = app.add_subcommand("sweep-p", "gnqa across filter orders, shared calibration");
    cw->add_option("instance", swp.instance, "instance file")->required();
    cw->add_option("--p-list", swp.p_list, "comma-separated filter orders")
        ->capture_default_str();
    cw->add_option("--transform", swp.transform, "base filter; p is overridden per point")
        ->capture_default_str();
    cw->add_option("--rho-rel-err", swp.rho_rel_err, "rho calibration target")
        ->capture_default_str();
    cw->add_option("--out-dir", swp.out_dir, "directory for p<value>.jsonl/.json")->required();
    cw->add_option("--max-iters", swp.max_iters, "0 = 50")->capture_default_str();
    cw->add_option("--tol", swp.tol, "0 = 1e-9")->capture_default_str();
    cw->add_option("--seed", swp.seed, "solver seed")->capture_default_str();
    cw->add_option("--jobs", swp.jobs, "worker pool size; each run stays single-threaded")
        ->capture_default_str();
    cw->add_option("--eval", swp.eval, "gnqa pullback evaluation")
        ->capture_default_str()
        ->check(CLI::IsMember({"inner", "expectation"}));

    SpectrumOptions spc;
    auto* cp = app.add_subcommand("spectrum", "dump the filtered eigenvalue distribution");
    cp->add_option("instance", spc.instance, "instance file")->required();
    cp->add_option("--transform", spc.transform, "spectral filter")->capture_default_str();
    cp->add_option("--rho-rel-err", spc.rho_rel_err, "rho calibration target")
        ->capture_default_str();
    cp->add_option("--top", spc.top, "keep only the top K levels (0 = all)")
        ->capture_default_str();
    cp->add_option("--out", spc.out, "output path (default: stdout)");

    auto* cl = app.add_subcommand("presets", "list the built-in benchmark presets");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (app.got_subcommand(cg)) return cmd_generate(gen, out, err);
        if (app.got_subcommand(cs)) return cmd_solve(sol, out, err);
        if (app.got_subcommand(cr)) return cmd_report(rep, out, err);
        if (app.got_subcommand(cw)) return cmd_sweep_p(swp, out, err);
        if (app.got_subcommand(cp)) return cmd_spectrum(spc, out, err);
        if (app.got_subcommand(cl)) {
            out << preset_catalog();
            return kOk;
        }
    } catch (const DeskLimitExceeded& e) {
        err << "desk limit: " << e.what() << "\n";
        return kDesk;
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return kUsage;
    } catch (const InfeasibleSpec& e) {
        err << "infeasible spec: " << e.what() << "\n";
        return kUsage;
    } catch (const GnqaError& e) {
        err << "error: " << e.what() << "\n";
        return kNumeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kNumeric;
    }
    return kOk;
}

}  // namespace cli
}  // namespace gnqa
