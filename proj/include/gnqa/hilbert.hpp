#pragma once

// Exact diagonal-Hamiltonian simulator. Everything here materializes 2^n
// arrays and is gated by the desk limit. Bit order is little-endian: variable
// k owns bit k of a basis index, bit value 1 means x_k = 1 (sigma_k = -1).
// All reductions run in a fixed pairwise order so repeated runs are
// bit-identical.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "gnqa/common.hpp"
#include "gnqa/model.hpp"

namespace gnqa {

struct DiagonalOperator {
    int n = 0;
    std::vector<double> values;  // size 2^n
};

struct DenseState {
    int n = 0;
    std::vector<double> amp;  // size 2^n, real amplitudes
};

namespace detail {

/// d[idx] += v * sigma_i, written as two contiguous runs per 2^(i+1) block.
inline void add_field_pattern(std::vector<double>& d, int i, double v) {
    const std::uint64_t lo = std::uint64_t{1} << i;
    const std::uint64_t m = d.size();
    for (std::uint64_t base = 0; base < m; base += 2 * lo) {
        for (std::uint64_t r = 0; r < lo; ++r) d[base + r] += v;
        for (std::uint64_t r = 0; r < lo; ++r) d[base + lo + r] -= v;
    }
}

/// d[idx] += v * sigma_i * sigma_j for i < j, again in contiguous runs.
inline void add_coupling_pattern(std::vector<double>& d, int i, int j, double v) {
    const std::uint64_t lo = std::uint64_t{1} << i;
    const std::uint64_t hi = std::uint64_t{1} << j;
    const std::uint64_t m = d.size();
    for (std::uint64_t base = 0; base < m; base += 2 * hi) {
        for (int sj = 0; sj < 2; ++sj) {
            const double vj = sj ? -v : v;
            const std::uint64_t half = base + static_cast<std::uint64_t>(sj) * hi;
            for (std::uint64_t mid = 0; mid < hi; mid += 2 * lo) {
                for (std::uint64_t r = 0; r < lo; ++r) d[half + mid + r] += vj;
                for (std::uint64_t r = 0; r < lo; ++r) d[half + mid + lo + r] -= vj;
            }
        }
    }
}

}  // namespace detail

/// Materialize the 2^n diagonal of a spin Hamiltonian (no offset included).
inline DiagonalOperator build_diagonal(const IsingHamiltonian& H) {
    require_desk(H.n, "build_diagonal");
    DiagonalOperator d;
    d.n = H.n;
    d.values.assign(std::uint64_t{1} << H.n, 0.0);
    for (int i = 0; i < H.n; ++i)
        if (H.h[static_cast<std::size_t>(i)] != 0.0)
            detail::add_field_pattern(d.values, i, H.h[static_cast<std::size_t>(i)]);
    for (const auto& c : H.couplings)
        if (c.v != 0.0) detail::add_coupling_pattern(d.values, c.i, c.j, c.v);
    return d;
}

/// Diagonal of a spin polynomial; monomial signs come from bit parities.
inline DiagonalOperator build_diagonal(const PuboProblem& p) {
    p.validate();
    require_desk(p.n, "build_diagonal");
    DiagonalOperator d;
    d.n = p.n;
    d.values.assign(std::uint64_t{1} << p.n, 0.0);
    for (const auto& t : p.terms) {
        if (t.v == 0.0) continue;
        if (t.vars.empty()) {
            for (double& x : d.values) x += t.v;
        } else if (t.vars.size() == 1) {
            detail::add_field_pattern(d.values, t.vars[0], t.v);
        } else if (t.vars.size() == 2) {
            detail::add_coupling_pattern(d.values, t.vars[0], t.vars[1], t.v);
        } else {
            std::uint64_t mask = 0;
            for (int var : t.vars) mask |= std::uint64_t{1} << var;
            const std::uint64_t m = d.values.size();
            for (std::uint64_t idx = 0; idx < m; ++idx) {
                const double sign = __builtin_parityll(idx & mask) ? -1.0 : 1.0;
                d.values[idx] += t.v * sign;
            }
        }
    }
    return d;
}

/// Product state with per-site vector (cos theta_k, sin theta_k), built by
/// doubling so each amplitude is an identical product order across calls.
/// The into-variant rebuilds inside the caller's buffer; iteration loops use
/// it to avoid reallocating 2^n doubles per pass.
inline void build_state_into(const std::vector<double>& theta, DenseState& s) {
    const int n = static_cast<int>(theta.size());
    if (n < 1) throw DimensionMismatch("build_state: empty theta");
    require_desk(n, "build_state");
    s.n = n;
    s.amp.resize(std::uint64_t{1} << n);
    s.amp[0] = 1.0;
    for (int k = 0; k < n; ++k) {
        const double c = std::cos(theta[static_cast<std::size_t>(k)]);
        const double sn = std::sin(theta[static_cast<std::size_t>(k)]);
        const std::uint64_t half = std::uint64_t{1} << k;
        for (std::uint64_t j = 0; j < half; ++j) {
            s.amp[half + j] = s.amp[j] * sn;
            s.amp[j] *= c;
        }
    }
}

inline DenseState build_state(const std::vector<double>& theta) {
    DenseState s;
    build_state_into(theta, s);
    return s;
}

/// phi(theta + delta e_k); the building block for parameter shifts.
inline DenseState shifted_state(const std::vector<double>& theta, int k, double delta) {
    if (k < 0 || k >= static_cast<int>(theta.size()))
        throw DimensionMismatch("shifted_state: coordinate out of range");
    std::vector<double> shifted = theta;
    shifted[static_cast<std::size_t>(k)] += delta;
    return build_state(shifted);
}

inline double overlap(const DenseState& a, const DenseState& b) {
    if (a.n != b.n) throw DimensionMismatch("overlap: state sizes differ");
    return pairwise_sum(a.amp.size(),
                        [&](std::uint64_t i) { return a.amp[i] * b.amp[i]; });
}

inline double expectation(const DenseState& s, const DiagonalOperator& d) {
    if (s.n != d.n) throw DimensionMismatch("expectation: dimension mismatch");
    return pairwise_sum(s.amp.size(),
                        [&](std::uint64_t i) { return s.amp[i] * s.amp[i] * d.values[i]; });
}

/// y_k = <del_k phi(theta) | target>, where del_k phi replaces site k's vector
/// with (-sin theta_k, cos theta_k).
///
/// Single pass over the tensor structure, O(2^n) total instead of the naive
/// O(n 2^n): a prefix-product ladder stores P_k (products over sites < k,
/// 2^k values, packed at slots [2^k, 2^{k+1})), while `work` holds the target
/// contracted against sites > k. Must agree with building the n shifted
/// states explicitly; the test suite checks that to 1e-12.
inline std::vector<double> jacobian_pullback(const std::vector<double>& theta,
                                             const DenseState& target) {
    const int n = static_cast<int>(theta.size());
    if (n < 1 || target.n != n)
        throw DimensionMismatch("jacobian_pullback: dimension mismatch");
    require_desk(n, "jacobian_pullback");

    const std::uint64_t m = std::uint64_t{1} << n;
    std::vector<double> ladder(m, 0.0);
    ladder[1] = 1.0;  // P_0
    for (int k = 0; k + 1 < n; ++k) {
        const double c = std::cos(theta[static_cast<std::size_t>(k)]);
        const double sn = std::sin(theta[static_cast<std::size_t>(k)]);
        const std::uint64_t src = std::uint64_t{1} << k;
        const std::uint64_t dst = src << 1;
        for (std::uint64_t j = 0; j < src; ++j) {
            ladder[dst + j] = ladder[src + j] * c;
            ladder[dst + src + j] = ladder[src + j] * sn;
        }
    }

    std::vector<double> work = target.amp;
    std::vector<double> y(static_cast<std::size_t>(n), 0.0);
    for (int k = n - 1; k >= 0; --k) {
        const double c = std::cos(theta[static_cast<std::size_t>(k)]);
        const double sn = std::sin(theta[static_cast<std::size_t>(k)]);
        const std::uint64_t half = std::uint64_t{1} << k;
        const double* prefix = ladder.data() + half;
        y[static_cast<std::size_t>(k)] = pairwise_sum(half, [&](std::uint64_t j) {
            return prefix[j] * (c * work[half + j] - sn * work[j]);
        });
        for (std::uint64_t j = 0; j < half; ++j) work[j] = c * work[j] + sn * work[half + j];
    }
    return y;
}

/// Sorted eigenvalue summary; ground entries grouped within a relative band.
inline Spectrum spectrum_of(const DiagonalOperator& d, double group_tol = 1e-12) {
    Spectrum s;
    s.values = d.values;
    std::sort(s.values.begin(), s.values.end());
    s.lambda0 = s.values.front();
    const double band = group_tol * std::max(1.0, std::abs(s.lambda0));
    for (double v : s.values) {
        if (v <= s.lambda0 + band)
            ++s.degeneracy;
        else
            break;
    }
    return s;
}

inline double diagonal_min(const DiagonalOperator& d) {
    double best = d.values[0];
    for (double v : d.values) best = std::min(best, v);
    return best;
}

inline std::uint64_t ground_degeneracy(const DiagonalOperator& d, double group_tol = 1e-12) {
    const double lambda0 = diagonal_min(d);
    const double band = group_tol * std::max(1.0, std::abs(lambda0));
    std::uint64_t count = 0;
    for (double v : d.values)
        if (v <= lambda0 + band) ++count;
    return count;
}

/// In-place normalization to unit 2-norm. ZeroImage when the norm vanishes.
inline void normalize(DenseState& s) {
    const double nrm = norm2(s.amp);
    if (!(nrm > 0.0)) throw ZeroImage("normalize: zero state");
    const double inv = 1.0 / nrm;
    for (double& a : s.amp) a *= inv;
}

}  // namespace gnqa
