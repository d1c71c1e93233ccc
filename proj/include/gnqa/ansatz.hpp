#pragma once

// Closed forms over the product ansatz phi(theta) = prod_k (cos t_k, sin t_k).
// With c_k = cos 2t_k the energy of a spin Hamiltonian is a polynomial in the
// c_k, so objective, gradient, and Hessian actions all cost O(n + couplings)
// and never touch a 2^n array. theta is unconstrained; the harmonics wrap.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "gnqa/common.hpp"
#include "gnqa/model.hpp"

namespace gnqa {

namespace detail {

inline void check_theta(const IsingHamiltonian& H, const std::vector<double>& theta,
                        const char* where) {
    if (static_cast<int>(theta.size()) != H.n)
        throw DimensionMismatch(std::string(where) + ": theta size " +
                                std::to_string(theta.size()) + " vs n = " + std::to_string(H.n));
}

struct Harmonics {
    std::vector<double> c;  // cos 2 theta_k
    std::vector<double> s;  // sin 2 theta_k
};

inline Harmonics harmonics(const std::vector<double>& theta) {
    Harmonics h;
    h.c.resize(theta.size());
    h.s.resize(theta.size());
    for (std::size_t k = 0; k < theta.size(); ++k) {
        h.c[k] = std::cos(2.0 * theta[k]);
        h.s[k] = std::sin(2.0 * theta[k]);
    }
    return h;
}

/// a_j = h_j + sum_{k != j} c_coupling_jk * cos2theta_k, one pass over couplings.
inline std::vector<double> field_accumulate(const IsingHamiltonian& H,
                                            const std::vector<double>& c) {
    std::vector<double> a = H.h;
    for (const auto& q : H.couplings) {
        a[static_cast<std::size_t>(q.i)] += q.v * c[static_cast<std::size_t>(q.j)];
        a[static_cast<std::size_t>(q.j)] += q.v * c[static_cast<std::size_t>(q.i)];
    }
    return a;
}

}  // namespace detail

/// L(theta) = <phi|H|phi> = sum_i h_i c_i + sum_{i<j} v_ij c_i c_j.
inline double objective(const IsingHamiltonian& H, const std::vector<double>& theta) {
    detail::check_theta(H, theta, "objective");
    std::vector<double> c(theta.size());
    for (std::size_t k = 0; k < theta.size(); ++k) c[k] = std::cos(2.0 * theta[k]);
    double acc = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) acc += H.h[i] * c[i];
    for (const auto& q : H.couplings)
        acc += q.v * c[static_cast<std::size_t>(q.i)] * c[static_cast<std::size_t>(q.j)];
    return acc;
}

/// dL/dtheta_j = -2 sin(2 theta_j) * (h_j + sum_{k != j} v_jk c_k).
inline std::vector<double> gradient(const IsingHamiltonian& H, const std::vector<double>& theta) {
    detail::check_theta(H, theta, "gradient");
    const auto hc = detail::harmonics(theta);
    const auto a = detail::field_accumulate(H, hc.c);
    std::vector<double> y(theta.size());
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = -2.0 * hc.s[j] * a[j];
    return y;
}

/// Diagonal of the Hessian: Y_jj = -4 cos(2 theta_j) * a_j.
inline std::vector<double> hessian_diagonal(const IsingHamiltonian& H,
                                            const std::vector<double>& theta) {
    detail::check_theta(H, theta, "hessian_diagonal");
    const auto hc = detail::harmonics(theta);
    const auto a = detail::field_accumulate(H, hc.c);
    std::vector<double> d(theta.size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = -4.0 * hc.c[j] * a[j];
    return d;
}

/// (Y v)_j with Y_jk = 4 v_jk sin(2 theta_j) sin(2 theta_k) off the diagonal.
inline std::vector<double> hessian_matvec(const IsingHamiltonian& H,
                                          const std::vector<double>& theta,
                                          const std::vector<double>& v) {
    detail::check_theta(H, theta, "hessian_matvec");
    if (v.size() != theta.size()) throw DimensionMismatch("hessian_matvec: vector size");
    const auto hc = detail::harmonics(theta);
    const auto a = detail::field_accumulate(H, hc.c);
    std::vector<double> sv(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) sv[k] = hc.s[k] * v[k];
    std::vector<double> b(v.size(), 0.0);  // b_j = sum_{k != j} v_jk s_k v_k
    for (const auto& q : H.couplings) {
        b[static_cast<std::size_t>(q.i)] += q.v * sv[static_cast<std::size_t>(q.j)];
        b[static_cast<std::size_t>(q.j)] += q.v * sv[static_cast<std::size_t>(q.i)];
    }
    std::vector<double> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        out[j] = -4.0 * hc.c[j] * a[j] * v[j] + 4.0 * hc.s[j] * b[j];
    return out;
}

/// (G v) for the curvature metric G = Y0 + Y1 / 2 + 2 (L - e0) I, where Y0 and
/// Y1 are the diagonal and off-diagonal parts of the Hessian and e0 estimates
/// the ground energy. Equals 2 (J^T H J - e0 I) v for the product-state
/// Jacobian J, which the full-state oracle in the tests confirms.
inline std::vector<double> metric_matvec(const IsingHamiltonian& H,
                                         const std::vector<double>& theta, double e0,
                                         const std::vector<double>& v) {
    detail::check_theta(H, theta, "metric_matvec");
    if (v.size() != theta.size()) throw DimensionMismatch("metric_matvec: vector size");
    const double shift = 2.0 * (objective(H, theta) - e0);
    const auto yd = hessian_diagonal(H, theta);
    const auto yv = hessian_matvec(H, theta, v);
    std::vector<double> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j)
        out[j] = 0.5 * (yv[j] + yd[j] * v[j]) + shift * v[j];
    return out;
}

inline std::vector<double> metric_diagonal(const IsingHamiltonian& H,
                                           const std::vector<double>& theta, double e0) {
    const double shift = 2.0 * (objective(H, theta) - e0);
    auto d = hessian_diagonal(H, theta);
    for (double& x : d) x += shift;
    return d;
}

/// Dense curvature matrix from the published per-entry recipe, kept verbatim
/// for comparison: diagonal entries use the factor table
///   C_kj = cos(pi - theta_j) for j == k, cos(theta_j) otherwise
/// over the binary-side coefficients, off-diagonal entries are
///   v_kl sin(2 theta_k) sin(2 theta_l).
/// The diagonal disagrees with the full-state J^T H J oracle (the tests
/// record the gap rather than assert it away); metric_matvec above is the
/// form the solver uses.
inline std::vector<std::vector<double>> metric_explicit(const IsingHamiltonian& H,
                                                        const std::vector<double>& theta) {
    detail::check_theta(H, theta, "metric_explicit");
    const std::size_t n = theta.size();

    // Recover binary-side coefficients: q_ii = -(h_i + sum_{j != i} v_ij) / 2,
    // off-diagonal cells are the couplings themselves.
    std::vector<double> qdiag(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) qdiag[i] = H.h[i];
    for (const auto& q : H.couplings) {
        qdiag[static_cast<std::size_t>(q.i)] += q.v;
        qdiag[static_cast<std::size_t>(q.j)] += q.v;
    }
    for (std::size_t i = 0; i < n; ++i) qdiag[i] *= -0.5;

    const auto hc = detail::harmonics(theta);
    std::vector<std::vector<double>> g(n, std::vector<double>(n, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> ck(n);
        for (std::size_t j = 0; j < n; ++j)
            ck[j] = (j == k) ? std::cos(std::numbers::pi - theta[j]) : std::cos(theta[j]);
        double acc = 0.0;
        for (const auto& q : H.couplings)
            acc += q.v * ck[static_cast<std::size_t>(q.i)] * ck[static_cast<std::size_t>(q.j)];
        for (std::size_t i = 0; i < n; ++i) acc -= qdiag[i] * 2.0 * ck[i];
        for (const auto& q : H.couplings)
            acc -= q.v * (ck[static_cast<std::size_t>(q.i)] + ck[static_cast<std::size_t>(q.j)]);
        g[k][k] = acc;
    }
    for (const auto& q : H.couplings) {
        const auto i = static_cast<std::size_t>(q.i);
        const auto j = static_cast<std::size_t>(q.j);
        g[i][j] = q.v * hc.s[i] * hc.s[j];
        g[j][i] = g[i][j];
    }
    return g;
}

/// Vertex snap: x_k = 1 when cos 2 theta_k < 0. Coordinates whose harmonic
/// sits within tie_tol of zero cannot be resolved.
inline std::optional<std::vector<std::uint8_t>> try_round(const std::vector<double>& theta,
                                                          double tie_tol = 1e-9) {
    std::vector<std::uint8_t> x(theta.size());
    for (std::size_t k = 0; k < theta.size(); ++k) {
        const double c = std::cos(2.0 * theta[k]);
        if (std::abs(c) <= tie_tol) return std::nullopt;
        x[k] = c < 0.0 ? 1 : 0;
    }
    return x;
}

struct RoundedSolution {
    std::vector<std::uint8_t> x;
    double objective = 0.0;  // recomputed on the binary side
};

inline RoundedSolution round_solution(const QuboProblem& q, const std::vector<double>& theta,
                                      double tie_tol = 1e-9) {
    if (static_cast<int>(theta.size()) != q.n)
        throw DimensionMismatch("round_solution: theta size vs n");
    auto x = try_round(theta, tie_tol);
    if (!x) throw UnresolvedParameter("round_solution: coordinate at the decision boundary");
    return {*x, q.value(*x)};
}

inline RoundedSolution round_solution(const PuboProblem& p, const std::vector<double>& theta,
                                      double tie_tol = 1e-9) {
    if (static_cast<int>(theta.size()) != p.n)
        throw DimensionMismatch("round_solution: theta size vs n");
    auto x = try_round(theta, tie_tol);
    if (!x) throw UnresolvedParameter("round_solution: coordinate at the decision boundary");
    return {*x, p.value(*x)};
}

}  // namespace gnqa
