#pragma once

// Gauss-Newton projection onto the product-state manifold: each iteration
// filters the current state through f(H), renormalizes, and pulls the target
// back through the ansatz Jacobian. Orthonormal Jacobian columns make the
// normal equations trivial, so a step is one pullback plus a scale.
//
//   zeta  = f(H) phi / |f(H) phi|
//   theta <- theta + eta * J^T zeta,   eta = 1 / <phi | zeta>  (variable mode)
//
// The variable step length is exact for a basis-state target: if zeta = |x>
// then theta lands on the vertex pattern of x in one step per coordinate's
// local Newton model (see newton_sin_sequence below).

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "gnqa/common.hpp"
#include "gnqa/hilbert.hpp"
#include "gnqa/optimizers.hpp"
#include "gnqa/transforms.hpp"

namespace gnqa {

struct GnqaConfig {
    SpectralTransform transform;
    enum class EtaMode { Variable, Fixed } eta_mode = EtaMode::Variable;
    double fixed_eta = 1.0;
    // Inner evaluates J^T zeta directly; Expectation reconstructs it from
    // states shifted by +-pi/4 in each coordinate. Same numbers, 2n state
    // builds per iteration instead of one ladder pass.
    enum class EvalMode { Inner, Expectation } eval_mode = EvalMode::Inner;
    int max_iters = 50;
    double obj_rel_tol = 1e-9;
    int stable_rounds = 3;       // identical rounded pattern this many iterations
    std::vector<double> theta0;  // empty = all pi/4
    std::uint64_t seed = 0;
    // Exact stationary points that are not the target (symmetric instances
    // started dead center) have a vanishing pullback with low overlap; a
    // seeded nudge of size deadlock_delta breaks the symmetry. Degenerate
    // ties also trap the iterate in saddle orbits whose telltale is that
    // overlap stops closing on 1: if the best overlap seen fails to improve
    // by stall_overlap_frac of its remaining gap for stall_window straight
    // iterations, the same nudge applies.
    double deadlock_step_tol = 1e-12;
    double deadlock_overlap = 0.999;
    double deadlock_delta = 0.05;
    int stall_window = 4;
    double stall_overlap_frac = 0.02;
    double step_fixed_point_tol = 1e-14;
    double tie_tol = 1e-9;
};

struct GnqaIteration {
    int iter = 0;
    double objective = 0.0;
    double eta = 0.0;
    double step_norm = 0.0;
    double overlap = 0.0;  // <phi | zeta> before the step
    double wall_ms = 0.0;
    bool perturbed = false;
};

struct GnqaResult {
    std::vector<GnqaIteration> records;
    std::vector<double> theta;
    double objective = 0.0;  // final <phi | H | phi>
    TerminalStatus status = TerminalStatus::NotConverged;
    int iterations = 0;  // theta updates applied, perturbations included
};

namespace detail {

/// Rounded bit pattern if every coordinate is committed past tie_tol.
inline std::optional<std::vector<std::uint8_t>> pattern_of(const std::vector<double>& theta,
                                                           double tie_tol) {
    std::vector<std::uint8_t> bits(theta.size());
    for (std::size_t k = 0; k < theta.size(); ++k) {
        const double c = std::cos(2.0 * theta[k]);
        if (std::abs(c) <= tie_tol) return std::nullopt;
        bits[k] = c < 0.0 ? 1 : 0;
    }
    return bits;
}

}  // namespace detail

inline GnqaResult gnqa_solve(const DiagonalOperator& d, const GnqaConfig& cfg) {
    cfg.transform.validate();
    const int n = d.n;
    if (cfg.max_iters < 1) throw GnqaError("gnqa_solve: max_iters must be at least 1");

    std::vector<double> theta = cfg.theta0.empty() ? detail::center_start(n) : cfg.theta0;
    if (static_cast<int>(theta.size()) != n) throw DimensionMismatch("gnqa_solve: theta0 size");

    const std::vector<double> f = apply_f(cfg.transform, d);
    Rng rng(cfg.seed);

    GnqaResult out;
    out.records.reserve(static_cast<std::size_t>(cfg.max_iters) + 1);

    DenseState phi = build_state(theta);
    DenseState g;
    g.n = n;
    g.amp.resize(phi.amp.size());
    double obj = expectation(phi, d);
    out.records.push_back({0, obj, 0.0, 0.0, 0.0, 0.0, false});

    std::optional<std::vector<std::uint8_t>> prev_pattern;
    int stable = 0;
    double best_overlap = 0.0;
    int since_best = 0;
    out.status = TerminalStatus::MaxIters;

    for (int it = 1; it <= cfg.max_iters; ++it) {
        const double t0 = detail::now_ms();

        // g = f(H) phi, unnormalized; all step forms divide the scale back out.
        for (std::size_t i = 0; i < g.amp.size(); ++i) g.amp[i] = f[i] * phi.amp[i];
        const double gn = norm2(g.amp);
        if (!(gn > 0.0)) throw ZeroImage("gnqa_solve: filtered state has zero norm");
        const double denom = dot(phi.amp, g.amp);
        const double overlap = denom / gn;
        if (!(overlap > 0.0))
            throw OverlapNonpositive("gnqa_solve: <phi|zeta> = " + std::to_string(overlap));

        if (overlap >= best_overlap + cfg.stall_overlap_frac * (1.0 - best_overlap)) {
            best_overlap = overlap;
            since_best = 0;
        } else {
            ++since_best;
        }

        std::vector<double> y;
        if (cfg.eval_mode == GnqaConfig::EvalMode::Inner) {
            y = jacobian_pullback(theta, g);
        } else {
            y.resize(static_cast<std::size_t>(n));
            const double quarter = std::numbers::pi / 4.0;
            const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
            for (int k = 0; k < n; ++k) {
                const DenseState plus = shifted_state(theta, k, quarter);
                const DenseState minus = shifted_state(theta, k, -quarter);
                y[static_cast<std::size_t>(k)] =
                    (dot(plus.amp, g.amp) - dot(minus.amp, g.amp)) * inv_sqrt2;
            }
        }
        // y holds J^T (f phi); the step is eta J^T zeta with zeta normalized,
        // which folds to y / <phi|f phi> (variable) or fixed_eta y / |f phi|.
        const double scale =
            cfg.eta_mode == GnqaConfig::EtaMode::Variable ? 1.0 / denom : cfg.fixed_eta / gn;
        double step_norm2 = 0.0;
        for (int k = 0; k < n; ++k) {
            y[static_cast<std::size_t>(k)] *= scale;
            step_norm2 += y[static_cast<std::size_t>(k)] * y[static_cast<std::size_t>(k)];
        }
        const double step_norm = std::sqrt(step_norm2);
        const double eta_reported =
            cfg.eta_mode == GnqaConfig::EtaMode::Variable ? 1.0 / overlap : cfg.fixed_eta;

        const bool stalled = since_best >= cfg.stall_window;
        if ((step_norm <= cfg.deadlock_step_tol || stalled) && overlap < cfg.deadlock_overlap) {
            double pn2 = 0.0;
            for (int k = 0; k < n; ++k) {
                const double delta = cfg.deadlock_delta * (2.0 * rng.uniform_real() - 1.0);
                theta[static_cast<std::size_t>(k)] += delta;
                pn2 += delta * delta;
            }
            build_state_into(theta, phi);
            obj = expectation(phi, d);
            out.records.push_back(
                {it, obj, eta_reported, std::sqrt(pn2), overlap, detail::now_ms() - t0, true});
            out.iterations = it;
            prev_pattern.reset();
            stable = 0;
            best_overlap = 0.0;
            since_best = 0;
            continue;
        }

        for (int k = 0; k < n; ++k) theta[static_cast<std::size_t>(k)] += y[static_cast<std::size_t>(k)];
        build_state_into(theta, phi);
        const double obj_new = expectation(phi, d);
        out.records.push_back(
            {it, obj_new, eta_reported, step_norm, overlap, detail::now_ms() - t0, false});
        out.iterations = it;

        if (step_norm <= cfg.step_fixed_point_tol) {
            obj = obj_new;
            out.status = TerminalStatus::Converged;
            break;
        }

        auto pattern = detail::pattern_of(theta, cfg.tie_tol);
        if (pattern && prev_pattern && *pattern == *prev_pattern) ++stable;
        else stable = pattern ? 1 : 0;
        prev_pattern = std::move(pattern);

        const bool obj_stable = std::abs(obj_new - obj) <= cfg.obj_rel_tol * std::max(std::abs(obj_new), 1e-9);
        obj = obj_new;
        if (obj_stable && stable >= cfg.stable_rounds) {
            out.status = TerminalStatus::Converged;
            break;
        }
    }

    out.theta = std::move(theta);
    out.objective = obj;
    return out;
}

/// One-coordinate commitment model of the variable-eta step: a coordinate
/// whose target bit is already dominant contracts like Newton's method on
/// sin, x <- x - tan x. From pi/4 the error square-cubes into roundoff in a
/// handful of steps.
inline std::vector<double> newton_sin_sequence(double x0, int steps) {
    std::vector<double> seq;
    seq.reserve(static_cast<std::size_t>(steps) + 1);
    seq.push_back(x0);
    double x = x0;
    for (int i = 0; i < steps; ++i) {
        x = x - std::tan(x);
        seq.push_back(x);
    }
    return seq;
}

}  // namespace gnqa
