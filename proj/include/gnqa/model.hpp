#pragma once

// Problem containers and exact references: sparse QUBO / PUBO storage, the
// spin-form Hamiltonian derived from a QUBO, and brute-force enumeration.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "gnqa/common.hpp"

namespace gnqa {

struct QuboEntry {
    int i = 0;
    int j = 0;
    double v = 0.0;
};

/// minimize x^T Q x over x in {0,1}^n, Q stored sparse upper-triangular
/// (entries with i <= j; duplicates are merged by canonicalize()).
struct QuboProblem {
    int n = 0;
    std::vector<QuboEntry> entries;

    void add(int i, int j, double v) { entries.push_back({i, j, v}); }

    /// Merge duplicate (i, j) cells and order entries lexicographically.
    void canonicalize() {
        std::map<std::pair<int, int>, double> cells;
        for (const auto& e : entries) cells[{e.i, e.j}] += e.v;
        entries.clear();
        for (const auto& [ij, v] : cells) entries.push_back({ij.first, ij.second, v});
    }

    void validate() const {
        if (n < 1) throw InfeasibleSpec("qubo: n must be at least 1");
        for (const auto& e : entries) {
            if (e.i < 0 || e.j < e.i || e.j >= n)
                throw DimensionMismatch("qubo: entry (" + std::to_string(e.i) + ", " +
                                        std::to_string(e.j) + ") out of range for n = " +
                                        std::to_string(n));
        }
    }

    /// x^T Q x at the assignment encoded by mask (bit k = x_k).
    double value(std::uint64_t mask) const {
        double acc = 0.0;
        for (const auto& e : entries) {
            const double bi = static_cast<double>((mask >> e.i) & 1u);
            const double bj = static_cast<double>((mask >> e.j) & 1u);
            acc += e.v * bi * bj;
        }
        return acc;
    }

    /// Same objective for assignments wider than 64 variables.
    double value(const std::vector<std::uint8_t>& x) const {
        double acc = 0.0;
        for (const auto& e : entries)
            acc += e.v * x[static_cast<std::size_t>(e.i)] * x[static_cast<std::size_t>(e.j)];
        return acc;
    }
};

/// One spin monomial v * prod_{i in vars} sigma_i with sigma_i = 1 - 2 x_i.
/// vars is sorted strictly increasing; an empty set is a constant term.
struct PuboTerm {
    std::vector<int> vars;
    double v = 0.0;
};

/// Sparse spin polynomial of arbitrary degree. Evaluated over binary
/// assignments through sigma_i = 1 - 2 x_i, so a satisfiability penalty
/// encoded here reads out violation counts directly.
struct PuboProblem {
    int n = 0;
    std::vector<PuboTerm> terms;

    void canonicalize() {
        std::map<std::vector<int>, double> cells;
        for (auto& t : terms) {
            std::vector<int> key = t.vars;
            std::sort(key.begin(), key.end());
            cells[key] += t.v;
        }
        terms.clear();
        for (const auto& [vars, v] : cells) terms.push_back({vars, v});
    }

    void validate() const {
        if (n < 1) throw InfeasibleSpec("pubo: n must be at least 1");
        for (const auto& t : terms) {
            for (std::size_t k = 0; k < t.vars.size(); ++k) {
                if (t.vars[k] < 0 || t.vars[k] >= n)
                    throw DimensionMismatch("pubo: variable index out of range");
                if (k > 0 && t.vars[k] <= t.vars[k - 1])
                    throw DimensionMismatch("pubo: term indices must be strictly increasing");
            }
        }
    }

    double value(std::uint64_t mask) const {
        double acc = 0.0;
        for (const auto& t : terms) {
            double prod = t.v;
            for (int var : t.vars) prod *= 1.0 - 2.0 * static_cast<double>((mask >> var) & 1u);
            acc += prod;
        }
        return acc;
    }

    double value(const std::vector<std::uint8_t>& x) const {
        double acc = 0.0;
        for (const auto& t : terms) {
            double prod = t.v;
            for (int var : t.vars) prod *= 1.0 - 2.0 * x[static_cast<std::size_t>(var)];
            acc += prod;
        }
        return acc;
    }
};

struct PuboDegreeReport {
    int max_degree = 0;
    bool has_constant = false;
    std::size_t term_count = 0;
};

/// Degree audit. No quadratization is performed anywhere in this library;
/// higher-degree polynomials are consumed as-is by the diagonal simulator.
inline PuboDegreeReport pubo_degree_report(const PuboProblem& p) {
    PuboDegreeReport r;
    r.term_count = p.terms.size();
    for (const auto& t : p.terms) {
        r.max_degree = std::max(r.max_degree, static_cast<int>(t.vars.size()));
        if (t.vars.empty()) r.has_constant = true;
    }
    return r;
}

/// H(sigma) = sum_i h_i sigma_i + sum_{i<j} c_ij sigma_i sigma_j, plus the
/// scalar offset linking it back to the binary objective:
///   x^T Q x = (offset' ... ) / 4 form, concretely
///   min_x x^T Q x = (-offset + min_sigma H(sigma)) / 4.
struct IsingHamiltonian {
    int n = 0;
    std::vector<double> h;
    std::vector<QuboEntry> couplings;  // i < j only
    double offset = 0.0;               // -2 sum_i q_ii - sum_{i<j} q_ij
};

/// Substitute x_i = (1 - sigma_i) / 2 into x^T Q x and collect terms.
inline IsingHamiltonian to_ising(const QuboProblem& q) {
    q.validate();
    IsingHamiltonian H;
    H.n = q.n;
    H.h.assign(static_cast<std::size_t>(q.n), 0.0);

    std::map<std::pair<int, int>, double> coup;
    double diag_sum = 0.0;
    double offdiag_sum = 0.0;
    for (const auto& e : q.entries) {
        if (e.i == e.j) {
            H.h[static_cast<std::size_t>(e.i)] -= 2.0 * e.v;
            diag_sum += e.v;
        } else {
            H.h[static_cast<std::size_t>(e.i)] -= e.v;
            H.h[static_cast<std::size_t>(e.j)] -= e.v;
            coup[{e.i, e.j}] += e.v;
            offdiag_sum += e.v;
        }
    }
    for (const auto& [ij, v] : coup) H.couplings.push_back({ij.first, ij.second, v});
    H.offset = -2.0 * diag_sum - offdiag_sum;
    return H;
}

struct HamiltonianStats {
    double trace = 0.0;      // exact: every sigma monomial sums to zero over the cube
    double variance = 0.0;   // mean of d^2 over the 2^n diagonal entries
    double sigma = 0.0;      // sqrt(variance), the spectral width scale
    double frobenius = 0.0;  // 2^(n/2) * sigma; overflows to inf for very large n
};

/// Closed-form spectral moments of the diagonal: the monomials are an
/// orthogonal family over {-1,1}^n, so the second moment is the coefficient
/// power sum_i h_i^2 + sum_{i<j} c_ij^2.
inline HamiltonianStats hamiltonian_stats(const IsingHamiltonian& H) {
    HamiltonianStats s;
    for (double hi : H.h) s.variance += hi * hi;
    for (const auto& c : H.couplings) s.variance += c.v * c.v;
    s.sigma = std::sqrt(s.variance);
    s.frobenius = std::exp2(static_cast<double>(H.n) / 2.0) * s.sigma;
    return s;
}

struct BruteForceResult {
    double optimum = 0.0;
    std::uint64_t degeneracy = 0;            // total count of minimizing assignments
    std::vector<std::uint64_t> minimizers;   // capped at max_minimizers, ascending masks
};

inline constexpr std::size_t brute_force_minimizer_cap = 4096;

namespace detail {

template <class Value>
BruteForceResult brute_force_enumerate(int n, const Value& value) {
    require_desk(n, "brute_force");
    const std::uint64_t count = std::uint64_t{1} << n;
    double best = value(0);
    for (std::uint64_t m = 1; m < count; ++m) best = std::min(best, value(m));

    // Second pass groups ties within a relative band of the optimum.
    const double tol = 1e-9 * std::max(1.0, std::abs(best));
    BruteForceResult r;
    r.optimum = best;
    for (std::uint64_t m = 0; m < count; ++m) {
        if (value(m) <= best + tol) {
            ++r.degeneracy;
            if (r.minimizers.size() < brute_force_minimizer_cap) r.minimizers.push_back(m);
        }
    }
    return r;
}

}  // namespace detail

inline BruteForceResult brute_force(const QuboProblem& q) {
    q.validate();
    return detail::brute_force_enumerate(q.n, [&](std::uint64_t m) { return q.value(m); });
}

inline BruteForceResult brute_force(const PuboProblem& p) {
    p.validate();
    return detail::brute_force_enumerate(p.n, [&](std::uint64_t m) { return p.value(m); });
}

/// Eigenvalue summary of a diagonal Hamiltonian.
struct Spectrum {
    std::vector<double> values;  // ascending
    double lambda0 = 0.0;
    std::uint64_t degeneracy = 0;
};

inline std::vector<std::uint8_t> bits_of(std::uint64_t mask, int n) {
    std::vector<std::uint8_t> x(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) x[static_cast<std::size_t>(k)] = (mask >> k) & 1u;
    return x;
}

inline std::uint64_t mask_of(const std::vector<std::uint8_t>& x) {
    if (x.size() > 63) throw DimensionMismatch("mask_of: more than 63 variables");
    std::uint64_t mask = 0;
    for (std::size_t k = 0; k < x.size(); ++k)
        if (x[k]) mask |= std::uint64_t{1} << k;
    return mask;
}

}  // namespace gnqa
