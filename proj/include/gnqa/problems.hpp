#pragma once

// Seeded benchmark generators. Every family is a deterministic function of
// its spec (identical spec -> byte-identical saved files), emits the standard
// penalty formulation of its constraint structure, and carries a feasibility
// predicate so tests can check that brute-force minimizers respect the
// encoded constraints.
//
// Penalty weights default to 1 + sum of |objective coefficients|, which
// strictly exceeds the largest objective gain any single constraint
// violation could buy. Constant terms produced by penalty expansion are kept
// out of the quadratic form and reported in meta.offset, so
// natural cost(x) = value(x) + offset.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "gnqa/common.hpp"
#include "gnqa/model.hpp"

namespace gnqa {

enum class Family {
    RandomQubo,
    MaxCut,
    NumberPartitioning,
    SetPacking,
    SetPartitioning,
    MinVertexCover,
    Knapsack,
    Max2Sat,
    GraphColoring,
    Qap,
    Tsp,
    NQueens,
    General01,
    Sat2,
    Sat3,
};

inline const char* to_string(Family f) {
    switch (f) {
        case Family::RandomQubo: return "random_qubo";
        case Family::MaxCut: return "maxcut";
        case Family::NumberPartitioning: return "number_partitioning";
        case Family::SetPacking: return "set_packing";
        case Family::SetPartitioning: return "set_partitioning";
        case Family::MinVertexCover: return "min_vertex_cover";
        case Family::Knapsack: return "knapsack";
        case Family::Max2Sat: return "max2sat";
        case Family::GraphColoring: return "graph_coloring";
        case Family::Qap: return "qap";
        case Family::Tsp: return "tsp";
        case Family::NQueens: return "nqueens";
        case Family::General01: return "general01";
        case Family::Sat2: return "sat2";
        case Family::Sat3: return "sat3";
    }
    return "unknown";
}

inline std::optional<Family> family_from_string(const std::string& s) {
    for (Family f : {Family::RandomQubo, Family::MaxCut, Family::NumberPartitioning,
                     Family::SetPacking, Family::SetPartitioning, Family::MinVertexCover,
                     Family::Knapsack, Family::Max2Sat, Family::GraphColoring, Family::Qap,
                     Family::Tsp, Family::NQueens, Family::General01, Family::Sat2, Family::Sat3})
        if (s == to_string(f)) return f;
    return std::nullopt;
}

struct GeneratorSpec {
    Family family = Family::RandomQubo;
    // Total variable count of the emitted problem. Families with internal
    // structure derive their shape from it: graph_coloring needs
    // size = nodes * colors, qap/tsp/nqueens need a perfect square,
    // knapsack/general01 split off slack bits.
    int size = 4;
    int colors = 3;          // graph_coloring only
    double density = 0.5;    // edge / entry probability for random graphs
    std::string variant;     // "", "random", "cycle", "complete", "wheel"
    double penalty = 0.0;    // 0 = auto rule
    std::uint64_t seed = 0;
};

struct GeneratorMeta {
    std::string family;
    int n = 0;
    std::uint64_t seed = 0;
    double penalty = 0.0;  // 0 when the family has no hard constraints
    double offset = 0.0;   // natural cost(x) = value(x) + offset
    std::vector<std::string> notes;
};

struct GeneratedProblem {
    QuboProblem qubo;
    PuboProblem pubo;
    bool is_pubo = false;
    GeneratorMeta meta;
    // Hard-constraint check on a raw bit pattern (bit k = variable k).
    // Families without constraints always return true.
    std::function<bool(std::uint64_t)> feasible;

    int n() const { return is_pubo ? pubo.n : qubo.n; }
    double value(std::uint64_t mask) const {
        return is_pubo ? pubo.value(mask) : qubo.value(mask);
    }
};

// ---------------------------------------------------------------------------
// Deterministic structure builders (no randomness; reused by generators and
// directly by tests).

inline QuboProblem maxcut_qubo(int n, const std::vector<std::pair<int, int>>& edges) {
    QuboProblem q;
    q.n = n;
    for (auto [i, j] : edges) {
        if (i == j || i < 0 || j < 0 || i >= n || j >= n)
            throw InfeasibleSpec("maxcut: bad edge");
        if (i > j) std::swap(i, j);
        q.add(i, i, -1.0);
        q.add(j, j, -1.0);
        q.add(i, j, 2.0);
    }
    q.canonicalize();
    q.validate();
    return q;
}

/// (c - 2 sum s_j x_j)^2 with c = sum s_j; the constant c^2 is returned as
/// the offset, so value + offset is the squared imbalance.
inline QuboProblem number_partitioning_qubo(const std::vector<long long>& s, double* offset) {
    QuboProblem q;
    q.n = static_cast<int>(s.size());
    if (q.n < 2) throw InfeasibleSpec("number_partitioning: need at least 2 values");
    long long c = 0;
    for (long long v : s) {
        if (v <= 0) throw InfeasibleSpec("number_partitioning: values must be positive");
        c += v;
    }
    for (int i = 0; i < q.n; ++i) {
        const double si = static_cast<double>(s[static_cast<std::size_t>(i)]);
        q.add(i, i, 4.0 * si * si - 4.0 * static_cast<double>(c) * si);
        for (int j = i + 1; j < q.n; ++j)
            q.add(i, j, 8.0 * si * static_cast<double>(s[static_cast<std::size_t>(j)]));
    }
    if (offset) *offset = static_cast<double>(c) * static_cast<double>(c);
    q.canonicalize();
    q.validate();
    return q;
}

namespace detail {

inline void exactly_one_penalty(QuboProblem& q, const std::vector<int>& group, double P,
                                double& offset) {
    // P (1 - sum x)^2 over the group; constant P goes to the offset.
    offset += P;
    for (std::size_t a = 0; a < group.size(); ++a) {
        q.add(group[a], group[a], -P);
        for (std::size_t b = a + 1; b < group.size(); ++b) {
            int i = group[a], j = group[b];
            if (i > j) std::swap(i, j);
            q.add(i, j, 2.0 * P);
        }
    }
}

inline std::vector<std::pair<int, int>> random_edges(int n, double density, Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform_real() < density) edges.push_back({i, j});
    if (edges.empty()) edges.push_back({0, 1});
    return edges;
}

inline std::vector<std::pair<int, int>> graph_edges(int n, const std::string& variant,
                                                    double density, Rng& rng) {
    if (variant == "cycle") {
        if (n < 3) throw InfeasibleSpec("cycle graph needs n >= 3");
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i) edges.push_back({std::min(i, (i + 1) % n), std::max(i, (i + 1) % n)});
        std::sort(edges.begin(), edges.end());
        return edges;
    }
    if (variant == "complete") {
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
        return edges;
    }
    if (variant.empty() || variant == "random") return random_edges(n, density, rng);
    throw InfeasibleSpec("unknown graph variant '" + variant + "'");
}

inline int isqrt_exact(int v, const char* what) {
    const int k = static_cast<int>(std::lround(std::sqrt(static_cast<double>(v))));
    if (k * k != v) throw InfeasibleSpec(std::string(what) + ": size must be a perfect square");
    return k;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// 2-SAT and 3-SAT clause machinery.

struct Clause2 {
    int v[2];
    int pol[2];  // literal satisfied when x_v == pol
};

struct Clause3 {
    int v[3];
    int pol[3];
};

inline bool clause_satisfied(const Clause2& c, std::uint64_t mask) {
    for (int t = 0; t < 2; ++t)
        if (static_cast<int>((mask >> c.v[t]) & 1u) == c.pol[t]) return true;
    return false;
}

inline bool clause_satisfied(const Clause3& c, std::uint64_t mask) {
    for (int t = 0; t < 3; ++t)
        if (static_cast<int>((mask >> c.v[t]) & 1u) == c.pol[t]) return true;
    return false;
}

/// Penalty expansion of (1-l_i)(1-l_j) per clause; value + offset counts
/// unsatisfied clauses.
inline QuboProblem sat2_qubo(int n, const std::vector<Clause2>& clauses, double* offset) {
    QuboProblem q;
    q.n = n;
    double off = 0.0;
    for (const Clause2& c : clauses) {
        int i = c.v[0], j = c.v[1];
        int pi = c.pol[0], pj = c.pol[1];
        if (i > j) {
            std::swap(i, j);
            std::swap(pi, pj);
        }
        if (i == j || i < 0 || j >= n) throw InfeasibleSpec("sat2: bad clause");
        if (pi == 1 && pj == 1) {
            off += 1.0;
            q.add(i, i, -1.0);
            q.add(j, j, -1.0);
            q.add(i, j, 1.0);
        } else if (pi == 1 && pj == 0) {
            q.add(j, j, 1.0);
            q.add(i, j, -1.0);
        } else if (pi == 0 && pj == 1) {
            q.add(i, i, 1.0);
            q.add(i, j, -1.0);
        } else {
            q.add(i, j, 1.0);
        }
    }
    if (offset) *offset = off;
    q.canonicalize();
    q.validate();
    return q;
}

/// Spin-side expansion of (1-l_i)(1-l_j)(1-l_k) summed over clauses; the
/// polynomial value counts unsatisfied clauses directly.
inline PuboProblem sat3_pubo(int n, const std::vector<Clause3>& clauses) {
    std::map<std::vector<int>, double> acc;
    for (const Clause3& c : clauses) {
        // (1-l) = (1 + s sigma)/2 with s = +1 for a positive literal.
        for (int sub = 0; sub < 8; ++sub) {
            std::vector<int> vars;
            double coeff = 1.0 / 8.0;
            for (int t = 0; t < 3; ++t) {
                if (!(sub >> t & 1)) continue;
                vars.push_back(c.v[t]);
                coeff *= c.pol[t] ? 1.0 : -1.0;
            }
            std::sort(vars.begin(), vars.end());
            acc[vars] += coeff;
        }
    }
    PuboProblem p;
    p.n = n;
    for (auto& [vars, v] : acc) p.terms.push_back({vars, v});
    p.canonicalize();
    p.validate();
    return p;
}

namespace detail {

/// Insert the falsifying pattern of three sorted variable positions into a
/// (n-3)-bit index, producing the full-basis index of a subcube element.
inline std::uint64_t spread3(std::uint64_t j, int v0, int v1, int v2, std::uint64_t pattern) {
    const std::uint64_t p0 = j & ((1ull << v0) - 1);
    const std::uint64_t p1 = (j >> v0) & ((1ull << (v1 - v0 - 1)) - 1);
    const std::uint64_t p2 = (j >> (v1 - 1)) & ((1ull << (v2 - v1 - 1)) - 1);
    const std::uint64_t p3 = j >> (v2 - 2);
    return p0 | (p1 << (v0 + 1)) | (p2 << (v1 + 1)) | (p3 << (v2 + 1)) | pattern;
}

}  // namespace detail

/// Random satisfiable 2-SAT with a brute-force-verified unique minimizer.
/// Clauses are drawn around a planted assignment; ambiguity is removed by
/// adding clauses that each eliminate a surviving non-planted solution, and
/// the whole attempt is resampled if the clause budget (4n) runs out.
inline QuboProblem generate_sat2_unique(int n, std::uint64_t seed,
                                        GeneratorMeta* meta_out = nullptr) {
    if (n < 2) throw InfeasibleSpec("sat2: n must be at least 2");
    require_desk(n, "generate_sat2_unique");
    const std::uint64_t space = 1ull << n;
    const int m_min = 2 * n, m_max = 4 * n;

    for (int attempt = 0; attempt < 64; ++attempt) {
        Rng rng(seed + 1000003ull * static_cast<std::uint64_t>(attempt));
        const std::uint64_t planted = rng.uniform_int(space);

        std::vector<Clause2> clauses;
        std::set<std::tuple<int, int, int, int>> seen;
        auto add_clause = [&](Clause2 c) {
            if (c.v[0] > c.v[1]) {
                std::swap(c.v[0], c.v[1]);
                std::swap(c.pol[0], c.pol[1]);
            }
            auto key = std::make_tuple(c.v[0], c.v[1], c.pol[0], c.pol[1]);
            if (seen.count(key)) return false;
            seen.insert(key);
            clauses.push_back(c);
            return true;
        };

        // Planted-satisfiable random clauses.
        int guard = 0;
        while (static_cast<int>(clauses.size()) < m_min && guard++ < 100 * m_min) {
            Clause2 c;
            c.v[0] = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n)));
            c.v[1] = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n)));
            if (c.v[0] == c.v[1]) continue;
            c.pol[0] = static_cast<int>(rng.uniform_int(2));
            c.pol[1] = static_cast<int>(rng.uniform_int(2));
            if (!clause_satisfied(c, planted)) continue;
            add_clause(c);
        }

        auto satisfies_all = [&](std::uint64_t mask) {
            for (const Clause2& c : clauses)
                if (!clause_satisfied(c, mask)) return false;
            return true;
        };
        auto collect_zeros = [&]() {
            std::vector<std::uint64_t> zeros;
            for (std::uint64_t m = 0; m < space; ++m)
                if (satisfies_all(m)) zeros.push_back(m);
            return zeros;
        };

        std::vector<std::uint64_t> zeros = collect_zeros();
        bool ok = true;
        while (zeros.size() > 1) {
            if (static_cast<int>(clauses.size()) >= m_max) {
                ok = false;
                break;
            }
            std::uint64_t target = zeros[0] == planted ? zeros[1] : zeros[0];
            const std::uint64_t diff = target ^ planted;
            const int i = __builtin_ctzll(diff);
            int j = -1;
            const std::uint64_t rest = diff & ~(1ull << i);
            if (rest) j = __builtin_ctzll(rest);
            else j = (i + 1) % n;
            // Falsified exactly when x matches `target` on (i, j); the planted
            // assignment differs on i, so it stays satisfying.
            Clause2 c;
            c.v[0] = i;
            c.v[1] = j;
            c.pol[0] = 1 - static_cast<int>((target >> i) & 1u);
            c.pol[1] = 1 - static_cast<int>((target >> j) & 1u);
            if (!add_clause(c)) {
                // Same killer already present yet target survives: impossible,
                // but fall back to a different second variable for safety.
                c.v[1] = (j + 1) % n == i ? (j + 2) % n : (j + 1) % n;
                c.pol[1] = 1 - static_cast<int>((target >> c.v[1]) & 1u);
                if (!add_clause(c)) {
                    ok = false;
                    break;
                }
            }
            std::vector<std::uint64_t> next;
            for (std::uint64_t z : zeros)
                if (clause_satisfied(clauses.back(), z)) next.push_back(z);
            zeros = std::move(next);
        }
        if (!ok || zeros.size() != 1 || zeros[0] != planted) continue;

        double offset = 0.0;
        QuboProblem q = sat2_qubo(n, clauses, &offset);
        if (meta_out) {
            meta_out->family = "sat2";
            meta_out->n = n;
            meta_out->seed = seed;
            meta_out->offset = offset;
            meta_out->notes = {"clauses=" + std::to_string(clauses.size()),
                               "unique_minimizer=1", "value+offset counts unsatisfied clauses"};
        }
        return q;
    }
    throw GenerationTimeout("generate_sat2_unique: no unique-minimizer instance within 64 attempts");
}

/// 3-SAT with a planted solution set of exactly 8 scattered assignments.
/// Random planted-satisfiable clauses thin the space first; the remaining
/// spurious solutions are removed by clauses chosen to falsify as many of
/// them at once as possible, then the clause count is padded to the target.
inline PuboProblem generate_sat3_planted(int n, int clause_target, std::uint64_t seed,
                                         GeneratorMeta* meta_out = nullptr) {
    if (n < 6 || n > 26) throw InfeasibleSpec("sat3: n must be in [6, 26]");
    require_desk(n, "generate_sat3_planted");
    const std::uint64_t space = 1ull << n;
    constexpr int kPlanted = 8;

    std::vector<std::array<int, 3>> triples;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c) triples.push_back({a, b, c});

    for (int attempt = 0; attempt < 50; ++attempt) {
        Rng rng(seed + 7777777ull * static_cast<std::uint64_t>(attempt));

        std::vector<std::uint64_t> planted;
        while (static_cast<int>(planted.size()) < kPlanted) {
            const std::uint64_t z = rng.uniform_int(space);
            if (std::find(planted.begin(), planted.end(), z) == planted.end())
                planted.push_back(z);
        }

        std::vector<std::uint8_t> alive(space, 1);
        std::uint64_t survivors = space;
        std::vector<Clause3> clauses;

        auto pattern_at = [](std::uint64_t mask, const std::array<int, 3>& v) {
            return ((mask >> v[0]) & 1u) | (((mask >> v[1]) & 1u) << 1) |
                   (((mask >> v[2]) & 1u) << 2);
        };
        auto apply_falsify = [&](const std::array<int, 3>& v, std::uint64_t pat3) {
            // pat3 holds the falsifying bits of v[0], v[1], v[2] (low to high).
            const std::uint64_t pattern = ((pat3 & 1u) << v[0]) | (((pat3 >> 1) & 1u) << v[1]) |
                                          (((pat3 >> 2) & 1u) << v[2]);
            for (std::uint64_t j = 0; j < (space >> 3); ++j) {
                const std::uint64_t idx = detail::spread3(j, v[0], v[1], v[2], pattern);
                if (alive[idx]) {
                    alive[idx] = 0;
                    --survivors;
                }
            }
            Clause3 c;
            for (int t = 0; t < 3; ++t) {
                c.v[t] = v[static_cast<std::size_t>(t)];
                c.pol[t] = 1 - static_cast<int>((pat3 >> t) & 1u);
            }
            clauses.push_back(c);
        };
        auto planted_clear = [&](const std::array<int, 3>& v, std::uint64_t pat3) {
            for (std::uint64_t z : planted)
                if (pattern_at(z, v) == pat3) return false;
            return true;
        };

        // Bulk phase: random accepted clauses until the surviving set is small
        // enough to enumerate.
        while (survivors > static_cast<std::uint64_t>(kPlanted) + 1500 &&
               static_cast<int>(clauses.size()) < clause_target) {
            const auto& v = triples[rng.uniform_int(triples.size())];
            const std::uint64_t pat3 = rng.uniform_int(8);
            if (!planted_clear(v, pat3)) continue;
            apply_falsify(v, pat3);
        }

        std::vector<std::uint64_t> extras;
        for (std::uint64_t m = 0; m < space; ++m) {
            if (!alive[m]) continue;
            if (std::find(planted.begin(), planted.end(), m) == planted.end())
                extras.push_back(m);
        }

        // Cleanup phase: each clause falsifies the subcube holding the most
        // surviving spurious solutions while keeping every planted one alive.
        bool stuck = false;
        while (!extras.empty() && static_cast<int>(clauses.size()) < clause_target) {
            std::size_t best_triple = 0;
            std::uint64_t best_pat = 0;
            std::size_t best_count = 0;
            for (std::size_t ti = 0; ti < triples.size(); ++ti) {
                std::size_t counts[8] = {};
                for (std::uint64_t y : extras) ++counts[pattern_at(y, triples[ti])];
                std::uint64_t banned = 0;
                for (std::uint64_t z : planted) banned |= 1ull << pattern_at(z, triples[ti]);
                for (std::uint64_t pat = 0; pat < 8; ++pat) {
                    if (banned >> pat & 1u) continue;
                    if (counts[pat] > best_count) {
                        best_count = counts[pat];
                        best_triple = ti;
                        best_pat = pat;
                    }
                }
            }
            if (best_count == 0) {
                stuck = true;
                break;
            }
            apply_falsify(triples[best_triple], best_pat);
            std::vector<std::uint64_t> next;
            for (std::uint64_t y : extras)
                if (pattern_at(y, triples[best_triple]) != best_pat) next.push_back(y);
            extras = std::move(next);
        }
        if (stuck || !extras.empty()) continue;

        // Pad with random accepted clauses; nothing outside the planted set is
        // alive, so the solution count stays exactly 8.
        int guard = 0;
        while (static_cast<int>(clauses.size()) < clause_target && guard++ < 100000) {
            const auto& v = triples[rng.uniform_int(triples.size())];
            const std::uint64_t pat3 = rng.uniform_int(8);
            if (!planted_clear(v, pat3)) continue;
            apply_falsify(v, pat3);
        }
        if (static_cast<int>(clauses.size()) != clause_target) continue;
        if (survivors != static_cast<std::uint64_t>(kPlanted)) continue;

        PuboProblem p = sat3_pubo(n, clauses);
        if (meta_out) {
            meta_out->family = "sat3";
            meta_out->n = n;
            meta_out->seed = seed;
            meta_out->notes = {"clauses=" + std::to_string(clause_target),
                               "satisfying_assignments=8",
                               "value counts unsatisfied clauses"};
        }
        return p;
    }
    throw GenerationTimeout("generate_sat3_planted: no 8-solution instance within 50 attempts");
}

// ---------------------------------------------------------------------------
// generate(spec)

inline GeneratedProblem generate(const GeneratorSpec& spec) {
    GeneratedProblem out;
    out.meta.family = to_string(spec.family);
    out.meta.seed = spec.seed;
    out.feasible = [](std::uint64_t) { return true; };
    Rng rng(spec.seed);
    const int n = spec.size;
    if (n < 1) throw InfeasibleSpec("generate: size must be positive");

    auto auto_penalty = [&](double coeff_sum) {
        return spec.penalty > 0.0 ? spec.penalty : 1.0 + coeff_sum;
    };

    switch (spec.family) {
        case Family::RandomQubo: {
            QuboProblem q;
            q.n = n;
            for (int i = 0; i < n; ++i) {
                q.add(i, i, 2.0 * rng.uniform_real() - 1.0);
                for (int j = i + 1; j < n; ++j)
                    if (rng.uniform_real() < spec.density)
                        q.add(i, j, 2.0 * rng.uniform_real() - 1.0);
            }
            q.canonicalize();
            q.validate();
            out.qubo = std::move(q);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "density=%g", spec.density);
            out.meta.notes = {buf};
            break;
        }
        case Family::MaxCut: {
            const auto edges = detail::graph_edges(n, spec.variant, spec.density, rng);
            out.qubo = maxcut_qubo(n, edges);
            out.meta.notes = {"edges=" + std::to_string(edges.size()),
                              "value = -(cut size)"};
            break;
        }
        case Family::NumberPartitioning: {
            std::vector<long long> s;
            long long total = 0;
            for (int i = 0; i < n; ++i) {
                s.push_back(1 + static_cast<long long>(rng.uniform_int(9)));
                total += s.back();
            }
            out.qubo = number_partitioning_qubo(s, &out.meta.offset);
            std::string vals = "values=";
            for (std::size_t i = 0; i < s.size(); ++i)
                vals += (i ? "," : "") + std::to_string(s[i]);
            out.meta.notes = {vals, "total=" + std::to_string(total),
                              "value+offset = squared imbalance"};
            break;
        }
        case Family::SetPacking: {
            const int universe = std::max(2, n / 2);
            std::vector<std::uint64_t> sets;
            std::vector<double> w;
            double wsum = 0.0;
            for (int i = 0; i < n; ++i) {
                std::uint64_t s = 0;
                const int card = 1 + static_cast<int>(rng.uniform_int(2));
                for (int c = 0; c < card; ++c)
                    s |= 1ull << rng.uniform_int(static_cast<std::uint64_t>(universe));
                sets.push_back(s);
                w.push_back(1.0 + static_cast<double>(rng.uniform_int(3)));
                wsum += w.back();
            }
            const double P = auto_penalty(wsum);
            QuboProblem q;
            q.n = n;
            for (int i = 0; i < n; ++i) {
                q.add(i, i, -w[static_cast<std::size_t>(i)]);
                for (int j = i + 1; j < n; ++j)
                    if (sets[static_cast<std::size_t>(i)] & sets[static_cast<std::size_t>(j)])
                        q.add(i, j, P);
            }
            q.canonicalize();
            q.validate();
            out.qubo = std::move(q);
            out.meta.penalty = P;
            out.meta.notes = {"universe=" + std::to_string(universe),
                              "value = -(packed weight) on feasible x"};
            out.feasible = [sets](std::uint64_t mask) {
                for (std::size_t i = 0; i < sets.size(); ++i) {
                    if (!(mask >> i & 1u)) continue;
                    for (std::size_t j = i + 1; j < sets.size(); ++j)
                        if ((mask >> j & 1u) && (sets[i] & sets[j])) return false;
                }
                return true;
            };
            break;
        }
        case Family::SetPartitioning: {
            if (n < 4) throw InfeasibleSpec("set_partitioning: size must be at least 4");
            const int universe = n - 2;
            // Planted exact cover: a shuffled split of the universe between
            // sets 0 and 1 guarantees feasibility.
            std::vector<int> perm(static_cast<std::size_t>(universe));
            for (int e = 0; e < universe; ++e) perm[static_cast<std::size_t>(e)] = e;
            for (int e = universe - 1; e > 0; --e) {
                const int k = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(e + 1)));
                std::swap(perm[static_cast<std::size_t>(e)], perm[static_cast<std::size_t>(k)]);
            }
            std::vector<std::uint64_t> sets(static_cast<std::size_t>(n), 0);
            for (int e = 0; e < universe; ++e)
                sets[e < universe / 2 ? 0 : 1] |= 1ull << perm[static_cast<std::size_t>(e)];
            for (int i = 2; i < n; ++i) {
                const int card = 1 + static_cast<int>(rng.uniform_int(
                                         std::min<std::uint64_t>(3, static_cast<std::uint64_t>(universe))));
                std::uint64_t s = 0;
                for (int c = 0; c < card; ++c)
                    s |= 1ull << rng.uniform_int(static_cast<std::uint64_t>(universe));
                sets[static_cast<std::size_t>(i)] = s;
            }
            std::vector<double> cost;
            double csum = 0.0;
            for (int i = 0; i < n; ++i) {
                cost.push_back(1.0 + static_cast<double>(rng.uniform_int(5)));
                csum += cost.back();
            }
            const double P = auto_penalty(csum);
            QuboProblem q;
            q.n = n;
            for (int i = 0; i < n; ++i) q.add(i, i, cost[static_cast<std::size_t>(i)]);
            for (int e = 0; e < universe; ++e) {
                std::vector<int> group;
                for (int i = 0; i < n; ++i)
                    if (sets[static_cast<std::size_t>(i)] >> e & 1u) group.push_back(i);
                detail::exactly_one_penalty(q, group, P, out.meta.offset);
            }
            q.canonicalize();
            q.validate();
            out.qubo = std::move(q);
            out.meta.penalty = P;
            out.meta.notes = {"universe=" + std::to_string(universe),
                              "value+offset = cover cost on feasible x"};
            out.feasible = [sets, universe](std::uint64_t mask) {
                for (int e = 0; e < universe; ++e) {
                    int hit = 0;
                    for (std::size_t i = 0; i < sets.size(); ++i)
                        if ((mask >> i & 1u) && (sets[i] >> e & 1u)) ++hit;
                    if (hit != 1) return false;
                }
                return true;
            };
            break;
        }
        case Family::MinVertexCover: {
            const auto edges = detail::graph_edges(n, spec.variant, spec.density, rng);
            const double P = auto_penalty(static_cast<double>(n));
            QuboProblem q;
            q.n = n;
            for (int i = 0; i < n; ++i) q.add(i, i, 1.0);
            for (auto [i, j] : edges) {
                // P (1 - x_i)(1 - x_j)
                out.meta.offset += P;
                q.add(i, i, -P);
                q.add(j, j, -P);
                q.add(i, j, P);
            }
            q.canonicalize();
            q.validate();
            out.qubo = std::move(q);
            out.meta.penalty = P;
            out.meta.notes = {"edges=" + std::to_string(edges.size()),
                              "value+offset = cover size on feasible x"};
            auto edge_copy = edges;
            out.feasible = [edge_copy](std::uint64_t mask) {
                for (auto [i, j] : edge_copy)
                    if (!(mask >> i & 1u) && !(mask >> j & 1u)) return false;
                return true;
            };
            break;
        }
        case Family::Knapsack: {
            if (n < 4) throw InfeasibleSpec("knapsack: size must be at least 4");
            const int slack = n <= 8 ? 2 : 3;
            const int items = n - slack;
            const long long cap_lo = 1ll << (slack - 1);
            const long long cap_hi = (1ll << slack) - 1;
            const long long C =
                cap_lo + static_cast<long long>(rng.uniform_int(
                             static_cast<std::uint64_t>(cap_hi - cap_lo + 1)));
            std::vector<long long> w;
            std::vector<double> v;
            double vsum = 0.0;
            for (int i = 0; i < items; ++i) {
                w.push_back(1 + static_cast<long long>(rng.uniform_int(static_cast<std::uint64_t>(C))));
                v.push_back(1.0 + static_cast<double>(rng.uniform_int(5)));
                vsum += v.back();
            }
            const double P = auto_penalty(vsum);
            // Coefficient vector of the constraint sum(w x) + sum(2^k y) - C.
            std::vector<double> a(static_cast<std::size_t>(n));
            for (int i = 0; i < items; ++i) a[static_cast<std::size_t>(i)] = static_cast<double>(w[static_cast<std::size_t>(i)]);
            for (int k = 0; k < slack; ++k)
                a[static_cast<std::size_t>(items + k)] = static_cast<double>(1ll << k);
            QuboProblem q;
            q.n = n;
            for (int i = 0; i < items; ++i) q.add(i, i, -v[static_cast<std::size_t>(i)]);
            out.meta.offset += P * static_cast<double>(C) * static_cast<double>(C);
            for (int i = 0; i < n; ++i) {
                q.add(i, i, P * a[static_cast<std::size_t>(i)] *
                                (a[static_cast<std::size_t>(i)] - 2.0 * static_cast<double>(C)));
                for (int j = i + 1; j < n; ++j)
                    q.add(i, j, 2.0 * P * a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(j)]);
            }
            q.canonicalize();
            q.validate();
            out.qubo = std::move(q);
            out.meta.penalty = P;
            out.meta.notes = {"items=" + std::to_string(items),
                              "capacity=" + std::to_string(C),
                              "slack_bits=" + std::to_string(slack),
                              "value+offset = -(packed value) on tight feasible x"};
            out.feasible = [w, C, items](std::uint64_t mask) {
                long long total = 0;
                for (int i = 0; i < items; ++i)
                    if (mask >> i & 1u) total += w[static_cast<std::size_t>(i)];
                return total <= C;
            };
            break;
        }
        case Family::Max2Sat: {
            const int m = 2 * n;
            std::vector<Clause2> clauses;
            std::set<std::tuple<int, int, int, int>> seen;
            int guard = 0;
            while (static_cast<int>(clauses.size()) < m && guard++ < 1000 * m) {
                Clause2 c;
                c.v[0] = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n)));
                c.v[1] = static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n)));
                if (c.v[0] == c.v[1]) continue;
                c.pol[0] = static_cast<int>(rng.uniform_int(2));
                c.pol[1] = static_cast<int>(rng.uniform_int(2));
                if (c.v[0] > c.v[1]) {
                    std::swap(c.v[0], c.v[1]);
                    std::swap(c.pol[0], c.pol[1]);
                }
                auto key = std::make_tuple(c.v[0], c.v[1], c.pol[0], c.pol[1]);
                if (seen.count(key)) continue;
                seen.insert(key);
                clauses.push_back(c);
            }
            out.qubo = sat2_qubo(n, clauses, &out.meta.offset);
            out.meta.notes = {"clauses=" + std::to_string(clauses.size()),
                              "value+offset = unsatisfied clause count"};
            break;
        }
        case Family::GraphColoring: {
            if (spec.colors < 2) throw InfeasibleSpec("graph_coloring: need at least 2 colors");
            if (n % spec.colors != 0)
                throw InfeasibleSpec("graph_coloring: size must be nodes * colors");
            const int nodes = n / spec.colors;
            const int colors = spec.colors;
            std::vector<std::pair<int, int>> edges;
            const std::string variant = spec.variant.empty() ? "wheel" : spec.variant;
            if (variant == "wheel") {
                if (nodes < 4) throw InfeasibleSpec("graph_coloring: wheel needs >= 4 nodes");
                for (int v2 = 1; v2 < nodes; ++v2) edges.push_back({0, v2});
                for (int v2 = 1; v2 < nodes; ++v2)
                    edges.push_back({std::min(v2, v2 % (nodes - 1) + 1),
                                     std::max(v2, v2 % (nodes - 1) + 1)});
                std::sort(edges.begin(), edges.end());
                edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
            } else {
                edges = detail::graph_edges(nodes, variant, spec.density, rng);
            }
            const double P = auto_penalty(0.0);
            QuboProblem q;
            q.n = n;
            auto idx = [colors](int v2, int c) { return v2 * colors + c; };
            for (int v2 = 0; v2 < nodes; ++v2) {
                std::vector<int> group;
                for (int c = 0; c < colors; ++c) group.push_back(idx(v2, c));
                detail::exactly_one_penalty(q, group, P, out.meta.offset);
            }
            for (auto [u, v2] : edges)
                for (int c = 0; c < colors; ++c)
                    q.add(std::min(idx(u, c), idx(v2, c)), std::max(idx(u, c), idx(v2, c)), P);
            q.canonicalize();
            q.validate();
            out.qubo = std::move(q);
            out.meta.penalty = P;
            out.meta.notes = {"nodes=" + std::to_string(nodes),
                              "colors=" + std::to_string(colors),
                              "edges=" + std::to_string(edges.size()), "variant=" + variant,
                              "value+offset = 0 exactly on proper colorings"};
            auto edge_copy = edges;
            out.feasible = [edge_copy, nodes, colors, idx](std::uint64_t mask) {
                for (int v2 = 0; v2 < nodes; ++v2) {
                    int on = 0;
                    for (int c = 0; c < colors; ++c)
                        if (mask >> idx(v2, c) & 1u) ++on;
                    if (on != 1) return false;
                }
                for (auto [u, v2] : edge_copy)
                    for (int c = 0; c < colors; ++c)
                        if ((mask >> idx(u, c) & 1u) && (mask >> idx(v2, c) & 1u)) return false;
                return true;
            };
            break;
        }
        case Family::Qap:
        case Family::Tsp: {
            const bool qap = spec.family == Family::Qap;
            const int k = detail::isqrt_exact(n, qap ? "qap" : "tsp");
            if (k < 2) throw InfeasibleSpec("qap/tsp: need at least a 2x2 assignment");
            auto matrix = [&](bool zero_diag) {
                std::vector<std::vector<double>> m(static_cast<std::size_t>(k),
                                                   std::vector<double>(static_cast<std::size_t>(k), 0.0));
                for (int i = 0; i < k; ++i)
                    for (int j = i + 1; j < k; ++j) {
                        const double v = 1.0 + static_cast<double>(rng.uniform_int(9));
                        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
                        m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
                    }
                (void)zero_diag;
                return m;
            };
            const auto f = matrix(true);
            const auto d = matrix(true);
            double fsum = 0.0, dmax = 0.0;
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    fsum += f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                    dmax = std::max(dmax, d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
                }
            const double P = auto_penalty(fsum * dmax);
            QuboProblem q;
            q.n = n;
            auto idx = [k](int i, int p) { return i * k + p; };
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    if (i == j) continue;
                    for (int p = 0; p < k; ++p)
                        for (int s = 0; s < k; ++s) {
                            if (p == s) continue;
                            const double cost =
                                qap ? f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                                          d[static_cast<std::size_t>(p)][static_cast<std::size_t>(s)]
                                    : (s == (p + 1) % k
                                           ? d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                                           : 0.0);
                            if (cost == 0.0) continue;
                            const int a = idx(i, p), b = idx(j, s);
                            q.add(std::min(a, b), std::max(a, b), cost);
                        }
                }
            for (int i = 0; i < k; ++i) {
                std::vector<int> row, col;
                for (int p = 0; p < k; ++p) {
                    row.push_back(idx(i, p));
                    col.push_back(idx(p, i));
                }
                detail::exactly_one_penalty(q, row, P, out.meta.offset);
                detail::exactly_one_penalty(q, col, P, out.meta.offset);
            }
            q.canonicalize();
            q.validate();
            out.qubo = std::move(q);
            out.meta.penalty = P;
            out.meta.notes = {std::string("k=") + std::to_string(k),
                              "value+offset = assignment/tour cost on permutations"};
            out.feasible = [k, idx](std::uint64_t mask) {
                for (int i = 0; i < k; ++i) {
                    int row = 0, col = 0;
                    for (int p = 0; p < k; ++p) {
                        if (mask >> idx(i, p) & 1u) ++row;
                        if (mask >> idx(p, i) & 1u) ++col;
                    }
                    if (row != 1 || col != 1) return false;
                }
                return true;
            };
            break;
        }
        case Family::NQueens: {
            const int k = detail::isqrt_exact(n, "nqueens");
            if (k < 1) throw InfeasibleSpec("nqueens: empty board");
            const double P = auto_penalty(0.0);
            QuboProblem q;
            q.n = n;
            auto idx = [k](int r, int c) { return r * k + c; };
            for (int r = 0; r < k; ++r) {
                std::vector<int> row;
                for (int c = 0; c < k; ++c) row.push_back(idx(r, c));
                detail::exactly_one_penalty(q, row, P, out.meta.offset);
            }
            for (int c = 0; c < k; ++c) {
                std::vector<int> col;
                for (int r = 0; r < k; ++r) col.push_back(idx(r, c));
                detail::exactly_one_penalty(q, col, P, out.meta.offset);
            }
            // Diagonals are at-most-one: pairwise penalty, no offset.
            for (int r1 = 0; r1 < k; ++r1)
                for (int c1 = 0; c1 < k; ++c1)
                    for (int r2 = r1 + 1; r2 < k; ++r2)
                        for (int c2 = 0; c2 < k; ++c2)
                            if (std::abs(r1 - r2) == std::abs(c1 - c2)) {
                                const int a = idx(r1, c1), b = idx(r2, c2);
                                q.add(std::min(a, b), std::max(a, b), P);
                            }
            q.canonicalize();
            q.validate();
            out.qubo = std::move(q);
            out.meta.penalty = P;
            out.meta.notes = {"board=" + std::to_string(k),
                              "value+offset = 0 exactly on non-attacking placements"};
            out.feasible = [k, idx](std::uint64_t mask) {
                for (int r = 0; r < k; ++r) {
                    int on = 0;
                    for (int c = 0; c < k; ++c)
                        if (mask >> idx(r, c) & 1u) ++on;
                    if (on != 1) return false;
                }
                for (int c = 0; c < k; ++c) {
                    int on = 0;
                    for (int r = 0; r < k; ++r)
                        if (mask >> idx(r, c) & 1u) ++on;
                    if (on != 1) return false;
                }
                for (int r1 = 0; r1 < k; ++r1)
                    for (int c1 = 0; c1 < k; ++c1)
                        for (int r2 = r1 + 1; r2 < k; ++r2)
                            for (int c2 = 0; c2 < k; ++c2)
                                if (std::abs(r1 - r2) == std::abs(c1 - c2) &&
                                    (mask >> idx(r1, c1) & 1u) && (mask >> idx(r2, c2) & 1u))
                                    return false;
                return true;
            };
            break;
        }
        case Family::General01: {
            if (n < 5) throw InfeasibleSpec("general01: size must be at least 5");
            const int slack = 3;
            const int vars = n - slack;
            std::vector<double> c;
            for (int i = 0; i < vars; ++i) {
                const double mag = 1.0 + static_cast<double>(rng.uniform_int(5));
                c.push_back(rng.uniform_int(2) ? mag : -mag);
            }
            std::vector<long long> a;
            long long asum = 0;
            const long long B = (1ll << (slack - 1)) +
                                static_cast<long long>(rng.uniform_int(1ull << (slack - 1)));
            int guard = 0;
            do {
                a.clear();
                asum = 0;
                for (int i = 0; i < vars; ++i) {
                    a.push_back(1 + static_cast<long long>(rng.uniform_int(3)));
                    asum += a.back();
                }
            } while (asum <= B && guard++ < 100);
            double csum = 0.0;
            for (double ci : c) csum += std::abs(ci);
            const double P = auto_penalty(csum);
            std::vector<double> coeff(static_cast<std::size_t>(n));
            for (int i = 0; i < vars; ++i) coeff[static_cast<std::size_t>(i)] = static_cast<double>(a[static_cast<std::size_t>(i)]);
            for (int k = 0; k < slack; ++k)
                coeff[static_cast<std::size_t>(vars + k)] = static_cast<double>(1ll << k);
            QuboProblem q;
            q.n = n;
            for (int i = 0; i < vars; ++i) q.add(i, i, c[static_cast<std::size_t>(i)]);
            out.meta.offset += P * static_cast<double>(B) * static_cast<double>(B);
            for (int i = 0; i < n; ++i) {
                q.add(i, i, P * coeff[static_cast<std::size_t>(i)] *
                                (coeff[static_cast<std::size_t>(i)] - 2.0 * static_cast<double>(B)));
                for (int j = i + 1; j < n; ++j)
                    q.add(i, j, 2.0 * P * coeff[static_cast<std::size_t>(i)] * coeff[static_cast<std::size_t>(j)]);
            }
            q.canonicalize();
            q.validate();
            out.qubo = std::move(q);
            out.meta.penalty = P;
            out.meta.notes = {"vars=" + std::to_string(vars),
                              "bound=" + std::to_string(B),
                              "slack_bits=" + std::to_string(slack),
                              "value+offset = linear cost on tight feasible x"};
            out.feasible = [a, B, vars](std::uint64_t mask) {
                long long total = 0;
                for (int i = 0; i < vars; ++i)
                    if (mask >> i & 1u) total += a[static_cast<std::size_t>(i)];
                return total <= B;
            };
            break;
        }
        case Family::Sat2: {
            out.qubo = generate_sat2_unique(n, spec.seed, &out.meta);
            out.meta.seed = spec.seed;
            break;
        }
        case Family::Sat3: {
            const int clause_target =
                n == 20 ? 91 : std::max(8, static_cast<int>(std::lround(4.55 * n)));
            out.pubo = generate_sat3_planted(n, clause_target, spec.seed, &out.meta);
            out.is_pubo = true;
            out.meta.seed = spec.seed;
            break;
        }
    }
    if (out.meta.n == 0) out.meta.n = out.n();
    return out;
}

// ---------------------------------------------------------------------------
// Preset sweep: one row per benchmark family at the reference sizes.

struct Preset {
    std::string name;
    GeneratorSpec spec;
};

inline const std::vector<Preset>& table_presets() {
    static const std::vector<Preset> presets = [] {
        std::vector<Preset> p;
        auto add = [&](std::string name, Family f, int size, std::uint64_t seed,
                       std::string variant = "", double density = 0.5, int colors = 3) {
            GeneratorSpec s;
            s.family = f;
            s.size = size;
            s.seed = seed;
            s.variant = std::move(variant);
            s.density = density;
            s.colors = colors;
            p.push_back({std::move(name), s});
        };
        add("random_qubo4", Family::RandomQubo, 4, 11);
        add("set_packing4", Family::SetPacking, 4, 5);
        add("max2sat4", Family::Max2Sat, 4, 3);
        add("maxcut5", Family::MaxCut, 5, 2);
        add("min_vertex_cover5", Family::MinVertexCover, 5, 0, "cycle");
        add("set_partitioning6", Family::SetPartitioning, 6, 9);
        add("knapsack6", Family::Knapsack, 6, 4);
        add("number_partitioning8", Family::NumberPartitioning, 8, 7);
        add("qap9", Family::Qap, 9, 1);
        add("general01_10", Family::General01, 10, 6);
        add("graph_coloring15", Family::GraphColoring, 15, 0, "wheel");
        // Stand-in for the external size-20 dense benchmark set: a full-density
        // random quadratic form at the same size.
        add("random_qubo20", Family::RandomQubo, 20, 13, "", 1.0);
        add("maxcut25", Family::MaxCut, 25, 7);
        return p;
    }();
    return presets;
}

inline const Preset* find_preset(const std::string& name) {
    for (const Preset& p : table_presets())
        if (p.name == name) return &p;
    return nullptr;
}

// ---------------------------------------------------------------------------
// File formats.
//
//   .qubo:  "N K" header, then K lines "i j v" with 0 <= i <= j < N.
//   .pubo:  "N K" header, then K lines "d i1 ... id v" (d = 0 is a constant).
//
// '#' starts a comment line; duplicates are summed on load; values print as
// %.17g so save -> load round-trips bit-exactly.

namespace detail {

struct Token {
    std::string text;
    int col = 1;
};

inline std::vector<Token> tokenize_line(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

inline long long parse_int_token(const Token& t, int line_no, const char* what) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(t.text, &used);
        if (used != t.text.size()) throw std::invalid_argument(what);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("expected ") + what + ", got '" + t.text + "'", line_no,
                         t.col);
    }
}

inline double parse_real_token(const Token& t, int line_no, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(t.text, &used);
        if (used != t.text.size()) throw std::invalid_argument(what);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("expected ") + what + ", got '" + t.text + "'", line_no,
                         t.col);
    }
}

/// Significant (non-blank, non-comment) lines with their 1-based numbers.
inline std::vector<std::pair<int, std::string>> significant_lines(std::istream& in) {
    std::vector<std::pair<int, std::string>> lines;
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        std::size_t i = 0;
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        if (i >= line.size() || line[i] == '#') continue;
        lines.push_back({no, line});
    }
    return lines;
}

inline void write_meta_comments(std::ostream& out, const GeneratorMeta* meta) {
    if (!meta) return;
    char buf[128];
    out << "# family=" << meta->family << " n=" << meta->n << " seed=" << meta->seed;
    if (meta->penalty != 0.0) {
        std::snprintf(buf, sizeof(buf), " penalty=%.17g", meta->penalty);
        out << buf;
    }
    if (meta->offset != 0.0) {
        std::snprintf(buf, sizeof(buf), " offset=%.17g", meta->offset);
        out << buf;
    }
    out << "\n";
    for (const std::string& note : meta->notes) out << "# " << note << "\n";
}

}  // namespace detail

inline void save(const QuboProblem& q, const std::string& path,
                 const GeneratorMeta* meta = nullptr) {
    std::ofstream out(path);
    if (!out) throw GnqaError("save: cannot open " + path);
    detail::write_meta_comments(out, meta);
    out << q.n << " " << q.entries.size() << "\n";
    char buf[64];
    for (const QuboEntry& e : q.entries) {
        std::snprintf(buf, sizeof(buf), "%.17g", e.v);
        out << e.i << " " << e.j << " " << buf << "\n";
    }
    if (!out) throw GnqaError("save: write failure on " + path);
}

inline void save(const PuboProblem& p, const std::string& path,
                 const GeneratorMeta* meta = nullptr) {
    std::ofstream out(path);
    if (!out) throw GnqaError("save: cannot open " + path);
    detail::write_meta_comments(out, meta);
    out << p.n << " " << p.terms.size() << "\n";
    char buf[64];
    for (const PuboTerm& t : p.terms) {
        out << t.vars.size();
        for (int v : t.vars) out << " " << v;
        std::snprintf(buf, sizeof(buf), "%.17g", t.v);
        out << " " << buf << "\n";
    }
    if (!out) throw GnqaError("save: write failure on " + path);
}

inline QuboProblem load_qubo(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GnqaError("load: cannot open " + path);
    const auto lines = detail::significant_lines(in);
    if (lines.empty()) throw ParseError("empty file", 1, 1);

    const auto header = detail::tokenize_line(lines[0].second);
    if (header.size() != 2)
        throw ParseError("expected header 'N K'", lines[0].first, 1);
    const long long n = detail::parse_int_token(header[0], lines[0].first, "variable count");
    const long long k = detail::parse_int_token(header[1], lines[0].first, "entry count");
    if (n < 1) throw ParseError("variable count must be positive", lines[0].first, header[0].col);
    if (k < 0 || static_cast<std::size_t>(k) + 1 != lines.size())
        throw ParseError("entry count does not match file", lines[0].first, header[1].col);

    QuboProblem q;
    q.n = static_cast<int>(n);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const int line_no = lines[r].first;
        const auto toks = detail::tokenize_line(lines[r].second);
        if (toks.size() != 3) throw ParseError("expected 'i j v'", line_no, 1);
        const long long i = detail::parse_int_token(toks[0], line_no, "row index");
        const long long j = detail::parse_int_token(toks[1], line_no, "column index");
        const double v = detail::parse_real_token(toks[2], line_no, "value");
        if (i < 0 || i >= n) throw ParseError("row index out of range", line_no, toks[0].col);
        if (j < 0 || j >= n) throw ParseError("column index out of range", line_no, toks[1].col);
        if (j < i) throw ParseError("lower-triangle entry (j < i)", line_no, toks[1].col);
        q.add(static_cast<int>(i), static_cast<int>(j), v);
    }
    q.canonicalize();
    q.validate();
    return q;
}

inline PuboProblem load_pubo(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GnqaError("load: cannot open " + path);
    const auto lines = detail::significant_lines(in);
    if (lines.empty()) throw ParseError("empty file", 1, 1);

    const auto header = detail::tokenize_line(lines[0].second);
    if (header.size() != 2)
        throw ParseError("expected header 'N K'", lines[0].first, 1);
    const long long n = detail::parse_int_token(header[0], lines[0].first, "variable count");
    const long long k = detail::parse_int_token(header[1], lines[0].first, "term count");
    if (n < 1) throw ParseError("variable count must be positive", lines[0].first, header[0].col);
    if (k < 0 || static_cast<std::size_t>(k) + 1 != lines.size())
        throw ParseError("term count does not match file", lines[0].first, header[1].col);

    PuboProblem p;
    p.n = static_cast<int>(n);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const int line_no = lines[r].first;
        const auto toks = detail::tokenize_line(lines[r].second);
        if (toks.empty()) throw ParseError("expected 'd i1 ... id v'", line_no, 1);
        const long long d = detail::parse_int_token(toks[0], line_no, "term degree");
        if (d < 0 || toks.size() != static_cast<std::size_t>(d) + 2)
            throw ParseError("token count does not match degree", line_no, toks[0].col);
        PuboTerm term;
        for (long long t = 0; t < d; ++t) {
            const auto& tok = toks[static_cast<std::size_t>(t) + 1];
            const long long v = detail::parse_int_token(tok, line_no, "variable index");
            if (v < 0 || v >= n) throw ParseError("variable index out of range", line_no, tok.col);
            term.vars.push_back(static_cast<int>(v));
        }
        std::sort(term.vars.begin(), term.vars.end());
        for (std::size_t t = 1; t < term.vars.size(); ++t)
            if (term.vars[t] == term.vars[t - 1])
                throw ParseError("repeated variable index in term", line_no, 1);
        term.v = detail::parse_real_token(toks.back(), line_no, "value");
        p.terms.push_back(std::move(term));
    }
    p.canonicalize();
    p.validate();
    return p;
}

/// presets.toml-style catalog of the reference sweep.
inline std::string preset_catalog() {
    std::ostringstream out;
    for (const Preset& p : table_presets()) {
        out << "[" << p.name << "]\n";
        out << "family = \"" << to_string(p.spec.family) << "\"\n";
        out << "size = " << p.spec.size << "\n";
        out << "seed = " << p.spec.seed << "\n";
        if (!p.spec.variant.empty()) out << "variant = \"" << p.spec.variant << "\"\n";
        if (p.spec.family == Family::GraphColoring) out << "colors = " << p.spec.colors << "\n";
        if (p.spec.family == Family::RandomQubo) out << "density = " << p.spec.density << "\n";
        out << "\n";
    }
    return out.str();
}

}  // namespace gnqa
