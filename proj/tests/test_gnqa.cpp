#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "gnqa/ansatz.hpp"
#include "gnqa/gnqa.hpp"
#include "gnqa/model.hpp"
#include "test_support.hpp"

using namespace gnqa;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

DiagonalOperator tiny_diag() {
    DiagonalOperator d;
    d.n = 2;
    d.values = {2.0, -2.0, -2.0, 2.0};
    return d;
}

GnqaConfig resolvent_cfg(const DiagonalOperator& d) {
    GnqaConfig cfg;
    cfg.transform.family = TransformFamily::Resolvent;
    cfg.transform.p = 8.0;
    cfg.transform.rho = rho_calibrate(d, 0.1).rho;
    return cfg;
}

std::uint64_t argmin_index(const DiagonalOperator& d) {
    std::uint64_t best = 0;
    for (std::uint64_t i = 1; i < d.values.size(); ++i)
        if (d.values[i] < d.values[best]) best = i;
    return best;
}

}  // namespace

TEST_CASE("solver reaches the ground state of a generic instance", "[gnqa]") {
    const auto ising = oracle::random_ising(5, 3);
    const auto d = build_diagonal(ising);
    const double lambda0 = diagonal_min(d);

    const auto res = gnqa_solve(d, resolvent_cfg(d));
    REQUIRE(res.status == TerminalStatus::Converged);
    REQUIRE(res.iterations <= 20);
    REQUIRE_THAT(res.objective, WithinAbs(lambda0, 1e-8 * std::max(1.0, std::abs(lambda0))));

    const auto bits = try_round(res.theta);
    REQUIRE(bits.has_value());
    REQUIRE(mask_of(*bits) == argmin_index(d));

    REQUIRE(res.records.size() == static_cast<std::size_t>(res.iterations) + 1);
    REQUIRE(res.records[0].iter == 0);
    REQUIRE(res.records[0].eta == 0.0);
    REQUIRE(res.records[0].step_norm == 0.0);
    REQUIRE(res.records[0].overlap == 0.0);
    for (std::size_t i = 1; i < res.records.size(); ++i) {
        const auto& r = res.records[i];
        REQUIRE(r.iter == static_cast<int>(i));
        REQUIRE_FALSE(r.perturbed);
        REQUIRE(r.overlap > 0.0);
        REQUIRE(r.overlap <= 1.0 + 1e-12);
        // Variable mode reports eta = 1 / overlap.
        REQUIRE_THAT(r.eta * r.overlap, WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("variable step commits a coordinate like Newton on sin", "[gnqa]") {
    DiagonalOperator d;
    d.n = 1;
    d.values = {2.0, -2.0};

    GnqaConfig cfg;
    cfg.transform.family = TransformFamily::ExactDelta;
    const auto res = gnqa_solve(d, cfg);

    // First step from pi/4 is cot(pi/4) = 1 exactly; the error against pi/2
    // then follows x <- x - tan x.
    REQUIRE(res.records.size() >= 2);
    REQUIRE_THAT(res.records[1].step_norm, WithinAbs(1.0, 1e-13));
    REQUIRE_THAT(res.records[1].eta, WithinAbs(std::numbers::sqrt2, 1e-12));

    REQUIRE(res.status == TerminalStatus::Converged);
    REQUIRE(res.iterations <= 6);
    REQUIRE_THAT(res.theta[0], WithinAbs(std::numbers::pi / 2.0, 1e-12));
    REQUIRE_THAT(res.objective, WithinAbs(-2.0, 1e-12));
}

TEST_CASE("symmetric start deadlocks and the seeded nudge breaks it", "[gnqa]") {
    // The reference instance is invariant under the global bit flip, so the
    // exact center is a stationary point with low overlap on the filter image.
    const auto d = tiny_diag();
    auto cfg = resolvent_cfg(d);
    const auto res = gnqa_solve(d, cfg);

    REQUIRE(res.records.size() >= 2);
    REQUIRE(res.records[1].perturbed);
    REQUIRE(res.records[1].step_norm > 0.0);
    REQUIRE(res.records[1].step_norm <= cfg.deadlock_delta * std::sqrt(2.0) + 1e-12);
    REQUIRE(res.records[1].overlap < cfg.deadlock_overlap);

    REQUIRE(res.status == TerminalStatus::Converged);
    REQUIRE_THAT(res.objective, WithinAbs(-2.0, 1e-8));
    const auto bits = try_round(res.theta);
    REQUIRE(bits.has_value());
    const auto mask = mask_of(*bits);
    REQUIRE((mask == 1 || mask == 2));
}

TEST_CASE("nudge stream is seed-deterministic", "[gnqa]") {
    const auto d = tiny_diag();
    auto cfg = resolvent_cfg(d);

    const auto a = gnqa_solve(d, cfg);
    const auto b = gnqa_solve(d, cfg);
    REQUIRE(a.theta == b.theta);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        REQUIRE(a.records[i].objective == b.records[i].objective);
        REQUIRE(a.records[i].step_norm == b.records[i].step_norm);
    }

    cfg.seed = 7;
    const auto c = gnqa_solve(d, cfg);
    REQUIRE(c.status == TerminalStatus::Converged);
    REQUIRE(a.theta != c.theta);  // different nudge, different trajectory
}

TEST_CASE("pullback and shifted-pair evaluation agree along the run", "[gnqa]") {
    const auto d = build_diagonal(oracle::random_ising(5, 3));
    auto inner = resolvent_cfg(d);
    auto shifted = inner;
    shifted.eval_mode = GnqaConfig::EvalMode::Expectation;

    const auto a = gnqa_solve(d, inner);
    const auto b = gnqa_solve(d, shifted);
    REQUIRE(a.status == TerminalStatus::Converged);
    REQUIRE(b.status == TerminalStatus::Converged);
    REQUIRE(a.iterations == b.iterations);
    for (std::size_t k = 0; k < a.theta.size(); ++k)
        REQUIRE_THAT(b.theta[k], WithinAbs(a.theta[k], 1e-10));
    REQUIRE_THAT(b.objective, WithinAbs(a.objective, 1e-10));
}

TEST_CASE("fixed step length converges but not faster than the variable one", "[gnqa]") {
    const auto d = build_diagonal(oracle::random_ising(5, 3));
    auto var_cfg = resolvent_cfg(d);
    auto fix_cfg = var_cfg;
    fix_cfg.eta_mode = GnqaConfig::EtaMode::Fixed;
    fix_cfg.fixed_eta = 1.0;
    fix_cfg.max_iters = 200;

    const auto var_res = gnqa_solve(d, var_cfg);
    const auto fix_res = gnqa_solve(d, fix_cfg);
    REQUIRE(var_res.status == TerminalStatus::Converged);
    REQUIRE(fix_res.status == TerminalStatus::Converged);
    REQUIRE(var_res.iterations <= fix_res.iterations);

    const double lambda0 = diagonal_min(d);
    REQUIRE_THAT(fix_res.objective, WithinAbs(lambda0, 1e-6 * std::max(1.0, std::abs(lambda0))));
    for (std::size_t i = 1; i < fix_res.records.size(); ++i)
        REQUIRE(fix_res.records[i].eta == 1.0);
}

TEST_CASE("solver input validation", "[gnqa]") {
    DiagonalOperator d;
    d.n = 1;
    d.values = {1.0, -1.0};

    GnqaConfig bad_iters;
    bad_iters.transform.family = TransformFamily::ExactDelta;
    bad_iters.max_iters = 0;
    REQUIRE_THROWS_AS(gnqa_solve(d, bad_iters), GnqaError);

    GnqaConfig bad_theta;
    bad_theta.transform.family = TransformFamily::ExactDelta;
    bad_theta.theta0 = {0.3, 0.4};
    REQUIRE_THROWS_AS(gnqa_solve(d, bad_theta), DimensionMismatch);

    GnqaConfig no_rho;  // resolvent without a shift never reaches the loop
    REQUIRE_THROWS_AS(gnqa_solve(d, no_rho), GnqaError);
}

TEST_CASE("negative overlap on the filter image fails loudly", "[gnqa]") {
    DiagonalOperator d;
    d.n = 1;
    d.values = {1.0, -1.0};
    GnqaConfig cfg;
    cfg.transform.family = TransformFamily::Identity;
    cfg.theta0 = {1.0};  // <phi | d phi> = cos(2) < 0
    REQUIRE_THROWS_AS(gnqa_solve(d, cfg), OverlapNonpositive);
}

TEST_CASE("state orthogonal to the filter image fails loudly", "[gnqa]") {
    DiagonalOperator d;
    d.n = 1;
    d.values = {1.0, -1.0};
    GnqaConfig cfg;
    cfg.transform.family = TransformFamily::ExactDelta;
    cfg.theta0 = {0.0};  // phi = |0>, filter keeps only |1>
    REQUIRE_THROWS_AS(gnqa_solve(d, cfg), ZeroImage);
}

TEST_CASE("scalar Newton-on-sin contraction from pi/4", "[gnqa]") {
    const auto seq = newton_sin_sequence(std::numbers::pi / 4.0, 4);
    REQUIRE(seq.size() == 5);
    REQUIRE(seq[0] == std::numbers::pi / 4.0);
    REQUIRE_THAT(seq[1], WithinAbs(-0.21460183660255161, 1e-15));
    REQUIRE_THAT(seq[2], WithinAbs(0.003356261858310311, 1e-15));
    REQUIRE_THAT(seq[3], WithinAbs(-1.2602253593105295e-08, 1e-16));
    REQUIRE(std::abs(seq[4]) < 1e-12);
    for (std::size_t i = 1; i < seq.size(); ++i) REQUIRE(std::abs(seq[i]) < std::abs(seq[i - 1]));
}
