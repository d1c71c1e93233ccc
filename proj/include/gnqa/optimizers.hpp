#pragma once

// Classical baselines over the closed-form objective: fixed-step gradient
// descent, a damped Newton method whose linear systems go through a
// MINRES-style Krylov solver, and the curvature-metric (natural gradient)
// variant. A small dense path integrates the continuation flow whose unit
// Euler step reproduces the Newton update.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gnqa/ansatz.hpp"
#include "gnqa/common.hpp"
#include "gnqa/model.hpp"

namespace gnqa {

enum class TerminalStatus { Converged, MaxIters, Stalled, NotConverged };

inline const char* to_string(TerminalStatus s) {
    switch (s) {
        case TerminalStatus::Converged: return "converged";
        case TerminalStatus::MaxIters: return "max_iters";
        case TerminalStatus::Stalled: return "stalled";
        case TerminalStatus::NotConverged: return "not_converged";
    }
    return "unknown";
}

struct SolverConfig {
    double eta = 0.0;        // 0 selects the per-method default
    int max_iters = 200;
    double grad_tol = 1e-8;
    double obj_tol = 0.0;    // relative objective stall tolerance; 0 disables
    double nu = 1.0;         // Newton damping scale, shift = nu * |grad|
    std::optional<double> e0;             // ground-energy estimate for the metric
    std::optional<double> known_lambda0;  // reference for stall classification
    double krylov_tol = 1e-10;
    int krylov_max_it = 0;   // 0 selects 4n
    std::uint64_t seed = 0;
    double theta0_jitter = 0.0;  // deliberate symmetry breaking, off by default
};

struct IterationRecord {
    int iter = 0;
    double objective = 0.0;
    double grad_norm = 0.0;
    double step_norm = 0.0;
    double eta = 0.0;
    double wall_ms = 0.0;
};

struct SolverTrace {
    std::vector<IterationRecord> records;  // at most max_iters + 1 entries
    std::vector<double> theta;
    TerminalStatus status = TerminalStatus::MaxIters;
    int iterations = 0;
};

struct KrylovResult {
    std::vector<double> x;
    int iterations = 0;
    double residual = 0.0;  // preconditioned residual relative to the rhs
    bool converged = false;
};

/// Symmetric (possibly indefinite) solve via MINRES with a diagonal
/// preconditioner. precond_diag entries are used in magnitude; entries below
/// 1e-12 are replaced by 1 so the preconditioner stays positive definite.
/// Throws KrylovBreakdown when the recurrence produces non-finite values.
template <class MatVec>
KrylovResult krylov_solve(const MatVec& apply, const std::vector<double>& b,
                          const std::vector<double>& precond_diag, double tol, int max_it) {
    const std::size_t n = b.size();
    if (precond_diag.size() != n) throw DimensionMismatch("krylov_solve: preconditioner size");

    std::vector<double> minv(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double m = std::abs(precond_diag[i]);
        minv[i] = 1.0 / (m < 1e-12 ? 1.0 : m);
    }

    KrylovResult out;
    out.x.assign(n, 0.0);
    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        out.converged = true;
        return out;
    }

    auto precondition = [&](const std::vector<double>& r) {
        std::vector<double> z(n);
        for (std::size_t i = 0; i < n; ++i) z[i] = minv[i] * r[i];
        return z;
    };

    std::vector<double> r1 = b;
    std::vector<double> y = precondition(r1);
    double beta1 = dot(r1, y);
    if (!(beta1 >= 0.0)) throw KrylovBreakdown("krylov_solve: preconditioner not positive");
    beta1 = std::sqrt(beta1);
    if (beta1 == 0.0) {
        out.converged = true;
        return out;
    }

    std::vector<double> r2 = r1;
    std::vector<double> w(n, 0.0), w1(n, 0.0), w2(n, 0.0), v(n, 0.0);
    double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0, phibar = beta1;
    double cs = -1.0, sn = 0.0, oldeps = 0.0;

    int iter = 0;
    for (iter = 1; iter <= max_it; ++iter) {
        const double s = 1.0 / beta;
        for (std::size_t i = 0; i < n; ++i) v[i] = s * y[i];
        std::vector<double> ay = apply(v);
        if (ay.size() != n) throw DimensionMismatch("krylov_solve: matvec size");
        if (iter >= 2) {
            const double f = beta / oldb;
            for (std::size_t i = 0; i < n; ++i) ay[i] -= f * r1[i];
        }
        const double alfa = dot(v, ay);
        {
            const double f = alfa / beta;
            for (std::size_t i = 0; i < n; ++i) ay[i] -= f * r2[i];
        }
        r1 = r2;
        r2 = ay;
        y = precondition(r2);
        oldb = beta;
        const double betasq = dot(r2, y);
        if (!std::isfinite(betasq) || betasq < 0.0)
            throw KrylovBreakdown("krylov_solve: lost positivity in the Lanczos recurrence");
        beta = std::sqrt(betasq);

        oldeps = epsln;
        const double delta = cs * dbar + sn * alfa;
        const double gbar = sn * dbar - cs * alfa;
        epsln = sn * beta;
        dbar = -cs * beta;
        double gamma = std::sqrt(gbar * gbar + beta * beta);
        if (gamma < 1e-300) gamma = 1e-300;
        cs = gbar / gamma;
        sn = beta / gamma;
        const double phi = cs * phibar;
        phibar = sn * phibar;

        w1 = w2;
        w2 = w;
        for (std::size_t i = 0; i < n; ++i)
            w[i] = (v[i] - oldeps * w1[i] - delta * w2[i]) / gamma;
        for (std::size_t i = 0; i < n; ++i) out.x[i] += phi * w[i];

        if (!std::isfinite(phibar)) throw KrylovBreakdown("krylov_solve: non-finite residual");
        if (phibar <= tol * beta1) {
            out.converged = true;
            break;
        }
        if (beta <= 1e-300) {  // Krylov space exhausted; current iterate is exact
            out.converged = true;
            break;
        }
    }
    out.iterations = std::min(iter, max_it);
    out.residual = phibar / beta1;
    return out;
}

namespace detail {

inline double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

inline std::vector<double> center_start(int n) {
    return std::vector<double>(static_cast<std::size_t>(n), std::numbers::pi / 4.0);
}

inline std::vector<double> apply_jitter(std::vector<double> theta, const SolverConfig& cfg) {
    if (cfg.theta0_jitter > 0.0) {
        Rng rng(cfg.seed == 0 ? 0x9e3779b97f4a7c15ull : cfg.seed);
        for (double& t : theta) t += cfg.theta0_jitter * (2.0 * rng.uniform_real() - 1.0);
    }
    return theta;
}

inline TerminalStatus classify_stationary(const IsingHamiltonian& H,
                                          const std::vector<double>& theta,
                                          const SolverConfig& cfg) {
    if (!cfg.known_lambda0) return TerminalStatus::Converged;
    const double l = objective(H, theta);
    const double ref = *cfg.known_lambda0;
    const double tol = 1e-6 * std::max(1.0, std::abs(ref));
    return std::abs(l - ref) <= tol ? TerminalStatus::Converged : TerminalStatus::Stalled;
}

/// Shared descent loop. step_fn maps the current gradient to a descent
/// direction d (the update is theta -= eta * d).
template <class StepFn>
SolverTrace descend(const IsingHamiltonian& H, std::vector<double> theta,
                    const SolverConfig& cfg, double default_eta, const StepFn& step_fn) {
    const double eta = cfg.eta > 0.0 ? cfg.eta : default_eta;
    const double t0 = now_ms();

    SolverTrace trace;
    std::vector<double> g = gradient(H, theta);
    double obj = objective(H, theta);
    trace.records.push_back({0, obj, norm2(g), 0.0, eta, now_ms() - t0});

    for (int it = 1; it <= cfg.max_iters; ++it) {
        if (norm2(g) < cfg.grad_tol) {
            trace.status = classify_stationary(H, theta, cfg);
            break;
        }
        const std::vector<double> dir = step_fn(theta, g);
        for (std::size_t i = 0; i < theta.size(); ++i) theta[i] -= eta * dir[i];

        double step_norm_sq = 0.0;
        for (double d : dir) step_norm_sq += (eta * d) * (eta * d);
        g = gradient(H, theta);
        const double prev_obj = obj;
        obj = objective(H, theta);
        trace.records.push_back(
            {it, obj, norm2(g), std::sqrt(step_norm_sq), eta, now_ms() - t0});
        trace.iterations = it;

        if (cfg.obj_tol > 0.0 &&
            std::abs(obj - prev_obj) <= cfg.obj_tol * std::max(std::abs(obj), 1.0)) {
            trace.status = norm2(g) < cfg.grad_tol ? classify_stationary(H, theta, cfg)
                                                   : TerminalStatus::Converged;
            break;
        }
        if (it == cfg.max_iters) trace.status = TerminalStatus::MaxIters;
    }
    if (trace.records.size() == 1)  // stationary before the first step
        trace.status = classify_stationary(H, theta, cfg);
    if (norm2(g) < cfg.grad_tol && trace.status == TerminalStatus::MaxIters)
        trace.status = classify_stationary(H, theta, cfg);

    trace.theta = std::move(theta);
    return trace;
}

}  // namespace detail

/// theta <- theta - eta * grad L, eta defaulting to 0.1.
inline SolverTrace gradient_descent(const IsingHamiltonian& H, std::vector<double> theta0,
                                    const SolverConfig& cfg = {}) {
    detail::check_theta(H, theta0, "gradient_descent");
    return detail::descend(H, detail::apply_jitter(std::move(theta0), cfg), cfg, 0.1,
                           [](const std::vector<double>&, const std::vector<double>& g) {
                               return g;
                           });
}

/// Damped Newton: solve (Y + nu |grad| I) d = grad via the Krylov path, step
/// theta -= eta d. A Krylov breakdown degrades that iteration to a pure
/// gradient step.
inline SolverTrace modified_newton(const IsingHamiltonian& H, std::vector<double> theta0,
                                   const SolverConfig& cfg = {}) {
    detail::check_theta(H, theta0, "modified_newton");
    const int max_kry = cfg.krylov_max_it > 0 ? cfg.krylov_max_it : 4 * H.n;
    return detail::descend(
        H, detail::apply_jitter(std::move(theta0), cfg), cfg, 1.0,
        [&H, &cfg, max_kry](const std::vector<double>& theta, const std::vector<double>& g) {
            const double shift = cfg.nu * norm2(g);
            auto apply = [&](const std::vector<double>& v) {
                auto yv = hessian_matvec(H, theta, v);
                for (std::size_t i = 0; i < v.size(); ++i) yv[i] += shift * v[i];
                return yv;
            };
            auto diag = hessian_diagonal(H, theta);
            for (double& d : diag) d += shift;
            try {
                return krylov_solve(apply, g, diag, cfg.krylov_tol, max_kry).x;
            } catch (const KrylovBreakdown&) {
                return g;
            }
        });
}

/// Curvature-metric descent: solve G d = grad L with
/// G = Y0 + Y1/2 + 2 (L - e0) I. Requires cfg.e0.
inline SolverTrace natural_gradient(const IsingHamiltonian& H, std::vector<double> theta0,
                                    const SolverConfig& cfg = {}) {
    detail::check_theta(H, theta0, "natural_gradient");
    if (!cfg.e0) throw GnqaError("natural_gradient: cfg.e0 (ground-energy estimate) required");
    const double e0 = *cfg.e0;
    const int max_kry = cfg.krylov_max_it > 0 ? cfg.krylov_max_it : 4 * H.n;
    return detail::descend(
        H, detail::apply_jitter(std::move(theta0), cfg), cfg, 1.0,
        [&H, &cfg, e0, max_kry](const std::vector<double>& theta, const std::vector<double>& g) {
            auto apply = [&](const std::vector<double>& v) {
                return metric_matvec(H, theta, e0, v);
            };
            const auto diag = metric_diagonal(H, theta, e0);
            try {
                return krylov_solve(apply, g, diag, cfg.krylov_tol, max_kry).x;
            } catch (const KrylovBreakdown&) {
                return g;
            }
        });
}

namespace detail {

/// Dense solve with partial pivoting; n here is a handful of coordinates.
inline std::vector<double> solve_dense(std::vector<std::vector<double>> a,
                                       std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) < 1e-13)
            throw SingularJacobian("solve_dense: pivot below threshold");
        std::swap(a[col], a[piv]);
        std::swap(b[col], b[piv]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double acc = b[r];
        for (std::size_t c = r + 1; c < n; ++c) acc -= a[r][c] * x[c];
        x[r] = acc / a[r][r];
    }
    return x;
}

}  // namespace detail

using VectorField = std::function<std::vector<double>(const std::vector<double>&)>;
using JacobianField = std::function<std::vector<std::vector<double>>(const std::vector<double>&)>;

struct GeodesicCheck {
    double max_deviation = 0.0;  // max_t | F(w(t)) - (1 - t) F(w0) |
    double newton_gap = 0.0;     // | one-Euler-step endpoint - Newton update |
};

/// Integrate dw/dt = -J(w)^{-1} F(w0) from t = 0 to 1 with `steps` explicit
/// Euler substeps. Along the exact flow the field decays linearly,
/// F(w(t)) = (1 - t) F(w0); the reported deviation measures how far the
/// discrete path drifts from that. With steps = 1 the endpoint is exactly the
/// Newton update w0 - J(w0)^{-1} F(w0), and newton_gap confirms it.
inline GeodesicCheck geodesic_flow_check(const VectorField& f, const JacobianField& jac,
                                         const std::vector<double>& w0, int steps) {
    if (steps < 1) throw GnqaError("geodesic_flow_check: steps must be positive");
    const std::vector<double> f0 = f(w0);
    const std::size_t n = w0.size();

    GeodesicCheck out;
    std::vector<double> w = w0;
    const double dt = 1.0 / static_cast<double>(steps);
    for (int i = 0; i < steps; ++i) {
        const std::vector<double> dw = detail::solve_dense(jac(w), f0);
        for (std::size_t k = 0; k < n; ++k) w[k] -= dt * dw[k];
        const double t = static_cast<double>(i + 1) * dt;
        const std::vector<double> fw = f(w);
        double dev_sq = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double d = fw[k] - (1.0 - t) * f0[k];
            dev_sq += d * d;
        }
        out.max_deviation = std::max(out.max_deviation, std::sqrt(dev_sq));
    }

    std::vector<double> one_step = w0;
    {
        const std::vector<double> dw = detail::solve_dense(jac(w0), f0);
        for (std::size_t k = 0; k < n; ++k) one_step[k] -= dw[k];
    }
    std::vector<double> newton = w0;
    {
        const std::vector<double> dw = detail::solve_dense(jac(w0), f(w0));
        for (std::size_t k = 0; k < n; ++k) newton[k] -= dw[k];
    }
    double gap_sq = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double d = one_step[k] - newton[k];
        gap_sq += d * d;
    }
    out.newton_gap = std::sqrt(gap_sq);
    return out;
}

}  // namespace gnqa
