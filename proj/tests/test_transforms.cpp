#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <numbers>

#include "gnqa/hilbert.hpp"
#include "gnqa/transforms.hpp"
#include "test_support.hpp"

using namespace gnqa;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Reference diagonal (2, -2, -2, 2): sigma = 2, so the default width
// normalization (m = 5) maps it to +-0.2.
DiagonalOperator ref_diag() {
    DiagonalOperator d;
    d.n = 2;
    d.values = {2.0, -2.0, -2.0, 2.0};
    return d;
}

SpectralTransform make(TransformFamily f, double p,
                       double rho = std::numeric_limits<double>::quiet_NaN()) {
    SpectralTransform t;
    t.family = f;
    t.p = p;
    t.rho = rho;
    return t;
}

}  // namespace

TEST_CASE("diagonal moments of the reference spectrum", "[transforms]") {
    const auto m = diagonal_moments(ref_diag());
    REQUIRE_THAT(m.mean, WithinAbs(0.0, 1e-15));
    REQUIRE_THAT(m.sigma, WithinAbs(2.0, 1e-15));
    REQUIRE_THAT(m.two_norm, WithinAbs(4.0, 1e-15));
    REQUIRE(m.min == -2.0);
    REQUIRE(m.max_abs == 2.0);
}

TEST_CASE("identity filter returns the spectrum itself", "[transforms]") {
    const auto f = apply_f(make(TransformFamily::Identity, 1.0), ref_diag());
    REQUIRE(f == ref_diag().values);
}

TEST_CASE("power filter on the normalized spectrum", "[transforms]") {
    const auto f = apply_f(make(TransformFamily::Power, 4.0), ref_diag());
    REQUIRE_THAT(f[0], WithinAbs(0.40960000000000008, 1e-16));  // (1 - 0.2)^4
    REQUIRE_THAT(f[1], WithinAbs(2.0735999999999999, 1e-15));   // (1 + 0.2)^4
    REQUIRE(f[2] == f[1]);
    REQUIRE(f[3] == f[0]);
}

TEST_CASE("power filter with the full-norm scale", "[transforms]") {
    auto t = make(TransformFamily::Power, 2.0);
    t.norm = NormMode::Frobenius;  // scale 4, normalized spectrum +-0.5
    const auto f = apply_f(t, ref_diag());
    REQUIRE_THAT(f[0], WithinAbs(0.25, 1e-15));
    REQUIRE_THAT(f[1], WithinAbs(2.25, 1e-15));
}

TEST_CASE("non-integer power rejects a negative base", "[transforms]") {
    auto t = make(TransformFamily::Power, 2.5);
    t.width_multiplier = 0.25;  // scale 0.5, normalized spectrum +-4
    REQUIRE_THROWS_AS(apply_f(t, ref_diag()), SpectrumOutOfRange);
    t.p = 2.0;  // integer order keeps the sign legal
    REQUIRE_NOTHROW(apply_f(t, ref_diag()));
}

TEST_CASE("exponential filter is max-shifted", "[transforms]") {
    const auto f = apply_f(make(TransformFamily::Exponential, 1.5), ref_diag());
    REQUIRE(f[1] == 1.0);  // ground entry pinned to 1 by the shift
    REQUIRE_THAT(f[0], WithinAbs(0.0024787521766663585, 1e-17));  // e^{-6}
}

TEST_CASE("gibbs filter sums to one", "[transforms]") {
    const auto f = apply_f(make(TransformFamily::Gibbs, 1.0), ref_diag());
    REQUIRE_THAT(f[0], WithinAbs(0.0089931049810457776, 1e-16));
    REQUIRE_THAT(f[1], WithinAbs(0.49100689501895423, 1e-15));
    REQUIRE_THAT(f[0] + f[1] + f[2] + f[3], WithinAbs(1.0, 1e-15));
}

TEST_CASE("truncated periodic delta at the reference shift", "[transforms]") {
    const auto f = apply_f(make(TransformFamily::Dirichlet, 3.0, -2.0), ref_diag());
    REQUIRE_THAT(f[0], WithinAbs(-0.25751810740024195, 1e-14));
    REQUIRE_THAT(f[1], WithinAbs(1.1140846016432675, 1e-14));
    // Out-of-interval spectrum: shrink the scale until |d-hat| >= 1.
    auto t = make(TransformFamily::Dirichlet, 3.0, -2.0);
    t.width_multiplier = 0.5;
    REQUIRE_THROWS_AS(apply_f(t, ref_diag()), SpectrumOutOfRange);
}

TEST_CASE("truncated chebyshev delta at the reference shift", "[transforms]") {
    const auto f = apply_f(make(TransformFamily::ChebDelta, 3.0, -2.0), ref_diag());
    REQUIRE_THAT(f[0], WithinAbs(0.62629125318068979, 1e-14));
    REQUIRE_THAT(f[1], WithinAbs(1.0879984698507332, 1e-14));

    auto t = make(TransformFamily::ChebDelta, 3.0, -15.0);  // rho-hat = -1.5
    REQUIRE_THROWS_AS(apply_f(t, ref_diag()), SpectrumOutOfRange);
    auto tight = make(TransformFamily::ChebDelta, 3.0, -2.0);
    tight.width_multiplier = 0.5;
    REQUIRE_THROWS_AS(apply_f(tight, ref_diag()), SpectrumOutOfRange);
}

TEST_CASE("shifted-inverse filter normalizes the ground entry to one", "[transforms]") {
    const auto f = apply_f(make(TransformFamily::Resolvent, 8.0, -2.2), ref_diag());
    REQUIRE(f[1] == 1.0);
    // ((2 + 2.2) / 0.2)^-8 = 21^-8
    REQUIRE_THAT(f[0], WithinRel(1.0 / 37822859361.0, 1e-12));

    REQUIRE_THROWS_AS(apply_f(make(TransformFamily::Resolvent, 8.0, -2.0), ref_diag()),
                      RhoNotBelowLambda0);
    REQUIRE_THROWS_AS(apply_f(make(TransformFamily::Resolvent, 8.0, 5.0), ref_diag()),
                      RhoNotBelowLambda0);
}

TEST_CASE("exact delta marks the ground multiplicity", "[transforms]") {
    const auto f = apply_f(make(TransformFamily::ExactDelta, 1.0), ref_diag());
    REQUIRE(f == std::vector<double>{0.0, 1.0, 1.0, 0.0});
}

TEST_CASE("transform validation", "[transforms]") {
    REQUIRE_THROWS_AS(apply_f(make(TransformFamily::Power, -1.0), ref_diag()), GnqaError);
    REQUIRE_THROWS_AS(apply_f(make(TransformFamily::Resolvent, 8.0), ref_diag()), GnqaError);
    auto t = make(TransformFamily::Power, 2.0);
    t.width_multiplier = 0.0;
    REQUIRE_THROWS_AS(apply_f(t, ref_diag()), GnqaError);
    REQUIRE(make(TransformFamily::Resolvent, 8.0, -3.0).needs_rho());
    REQUIRE_FALSE(make(TransformFamily::Gibbs, 1.0).needs_rho());
}

TEST_CASE("filtered state is the normalized elementwise product", "[transforms]") {
    const auto phi = build_state(oracle::random_theta(2, 3));
    const auto t = make(TransformFamily::Resolvent, 8.0, -2.2);
    const auto zeta = apply_rf(t, phi, ref_diag());
    REQUIRE_THAT(norm2(zeta.amp), WithinAbs(1.0, 1e-14));

    const auto f = apply_f(t, ref_diag());
    double nrm = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) nrm += f[i] * phi.amp[i] * f[i] * phi.amp[i];
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < f.size(); ++i)
        REQUIRE_THAT(zeta.amp[i], WithinAbs(f[i] * phi.amp[i] / nrm, 1e-14));
}

TEST_CASE("filtered state is invariant under positive rescaling of f", "[transforms]") {
    const auto phi = build_state(oracle::random_theta(4, 8));
    const auto d4 = build_diagonal(oracle::random_ising(4, 9));
    auto f = apply_f(make(TransformFamily::Gibbs, 2.0), d4);
    const auto base = apply_rf_precomputed(f, phi);
    for (double alpha : {1e7, 1e-9}) {
        auto scaled = f;
        for (double& x : scaled) x *= alpha;
        const auto z = apply_rf_precomputed(scaled, phi);
        for (std::size_t i = 0; i < z.amp.size(); ++i)
            REQUIRE_THAT(z.amp[i], WithinAbs(base.amp[i], 5e-15));
    }
}

TEST_CASE("filtering an orthogonal state fails loudly", "[transforms]") {
    DenseState phi;
    phi.n = 2;
    phi.amp = {1.0, 0.0, 0.0, 0.0};  // no weight on the ground pair
    const auto f = apply_f(make(TransformFamily::ExactDelta, 1.0), ref_diag());
    REQUIRE_THROWS_AS(apply_rf_precomputed(f, phi), ZeroImage);
}

TEST_CASE("free-energy curve at the reference spectrum", "[transforms]") {
    const auto d = ref_diag();
    // rho(1) = -2 - ln(2 + 2 e^{-4})
    REQUIRE_THAT(rho_estimate(d, 1.0), WithinAbs(-2.7112971084777548, 1e-14));
    REQUIRE_THROWS_AS(rho_estimate(d, 0.0), GnqaError);
}

TEST_CASE("free-energy curve bounds and monotonicity", "[transforms]") {
    const auto d = ref_diag();
    const double lambda0 = -2.0;
    for (double s : {0.25, 1.0, 4.0, 20.0}) {
        const double r = rho_estimate(d, s);
        REQUIRE(r < lambda0);                                // strict lower bound
        REQUIRE(r >= lambda0 - std::log(4.0) / s - 1e-12);   // trace cap
    }
    REQUIRE(rho_estimate(d, 0.5) < rho_estimate(d, 1.0));
    REQUIRE(rho_estimate(d, 1.0) < rho_estimate(d, 4.0));
    // Large s approaches lambda0 - ln(degeneracy)/s.
    REQUIRE_THAT(rho_estimate(d, 20.0), WithinAbs(lambda0 - std::log(2.0) / 20.0, 1e-10));
}

TEST_CASE("shift calibration lands in the target band", "[transforms]") {
    const auto d = build_diagonal(oracle::random_ising(8, 11));
    const double lambda0 = diagonal_min(d);
    REQUIRE(lambda0 < 0.0);
    const auto cal = rho_calibrate(d, 0.1);
    REQUIRE(cal.status == RhoCalibration::Status::Ok);
    const double err = (lambda0 - cal.rho) / std::abs(lambda0);
    REQUIRE(err >= 0.089);
    REQUIRE(err <= 0.111);
    REQUIRE(cal.rho < lambda0);
}

TEST_CASE("shift calibration falls back when lambda0 is zero", "[transforms]") {
    DiagonalOperator d;
    d.n = 2;
    d.values = {4.0, 0.0, 0.0, 4.0};  // sigma = 2, lambda0 = 0
    const auto cal = rho_calibrate(d, 0.1);
    REQUIRE(cal.status == RhoCalibration::Status::SigmaFallback);
    REQUIRE_THAT(cal.rho, WithinAbs(-0.2, 1e-15));

    DiagonalOperator flat;
    flat.n = 1;
    flat.values = {0.0, 0.0};
    const auto fcal = rho_calibrate(flat, 0.1);
    REQUIRE(fcal.status == RhoCalibration::Status::SigmaFallback);
    REQUIRE_THAT(fcal.rho, WithinAbs(-1.0, 1e-15));
}

TEST_CASE("shift calibration reports bracket exhaustion", "[transforms]") {
    const auto d = ref_diag();
    const auto tight = rho_calibrate(d, 1e-9);  // needs s beyond s_max
    REQUIRE(tight.status == RhoCalibration::Status::BoundaryS);
    REQUIRE(tight.s == 1e6);
    const auto loose = rho_calibrate(d, 1e10);  // needs s below s_min
    REQUIRE(loose.status == RhoCalibration::Status::BoundaryS);
    REQUIRE(loose.s == 1e-9);
    REQUIRE_THROWS_AS(rho_calibrate(d, 0.0), GnqaError);
}

TEST_CASE("series approximation of the free-energy curve converges", "[transforms]") {
    const auto d = ref_diag();
    const double exact = -2.7112971084777548;
    REQUIRE_THAT(rho_via_chebyshev(d, 1.0, 4), WithinAbs(-2.7104311876871452, 1e-9));
    REQUIRE_THAT(rho_via_chebyshev(d, 1.0, 10), WithinAbs(-2.7112971072729044, 1e-9));
    REQUIRE_THAT(rho_via_chebyshev(d, 1.0, 20), WithinAbs(exact, 1e-12));
    REQUIRE_THAT(rho_via_chebyshev(d, 1.0, 30), WithinAbs(exact, 1e-12));
    REQUIRE(std::abs(rho_via_chebyshev(d, 1.0, 10) - exact) <
            std::abs(rho_via_chebyshev(d, 1.0, 4) - exact));
    REQUIRE_THROWS_AS(rho_via_chebyshev(d, -1.0, 8), GnqaError);
    REQUIRE_THROWS_AS(rho_via_chebyshev(d, 1.0, 0), GnqaError);
}

TEST_CASE("residual diagnostic on the reference spectrum", "[transforms]") {
    const auto rep = transform_residual(make(TransformFamily::Resolvent, 2.0, -2.2), ref_diag());
    REQUIRE(rep.ground_degeneracy == 2);
    // Two excited entries at 21^-2 each: r = 2/441^2.
    REQUIRE_THAT(rep.r, WithinRel(1.0283780934898562e-05, 1e-10));
    REQUIRE_THAT(rep.bound, WithinRel(1.0283701618485352e-05, 1e-10));

    const auto sharp = transform_residual(make(TransformFamily::Resolvent, 8.0, -2.2), ref_diag());
    REQUIRE_THAT(sharp.r, WithinRel(1.3980454162335403e-21, 1e-10));
    REQUIRE(sharp.bound <= rep.bound);
}

TEST_CASE("residual bound dominates the actual distance to the ground space", "[transforms]") {
    const auto d = ref_diag();
    const auto t = make(TransformFamily::Resolvent, 2.0, -2.2);
    const auto rep = transform_residual(t, d);

    const auto phi = build_state(std::vector<double>(2, std::numbers::pi / 4.0));
    const auto zeta = apply_rf(t, phi, d);
    // Normalized ground-space projection of zeta.
    const double inv = 1.0 / std::numbers::sqrt2;
    std::vector<double> xi{0.0, inv, inv, 0.0};
    double dist_sq = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        const double diff = zeta.amp[i] - xi[i];
        dist_sq += diff * diff;
    }
    REQUIRE_THAT(dist_sq, WithinRel(5.1418706382560617e-06, 1e-10));
    REQUIRE(dist_sq <= rep.bound);
}

TEST_CASE("residual diagnostic rejects a filter that kills the ground state", "[transforms]") {
    DiagonalOperator d;
    d.n = 2;
    d.values = {1.0, 1.0, 3.0, 3.0};  // sigma = 1
    auto t = make(TransformFamily::Power, 2.0);
    t.width_multiplier = 1.0;  // scale 1: f(lambda0) = (1 - 1)^2 = 0
    REQUIRE_THROWS_AS(transform_residual(t, d), GnqaError);
}

TEST_CASE("transform codec round-trips", "[transforms]") {
    const auto t = parse_transform("resolvent:8:rho=-4.2");
    REQUIRE(t.family == TransformFamily::Resolvent);
    REQUIRE(t.p == 8.0);
    REQUIRE(t.rho == -4.2);
    REQUIRE(format_transform(t) == "resolvent:8:rho=-4.2000000000000002");

    const auto back = parse_transform(format_transform(t));
    REQUIRE(back.family == t.family);
    REQUIRE(back.p == t.p);
    REQUIRE(back.rho == t.rho);

    const auto p12 = parse_transform("power:12");
    REQUIRE(p12.family == TransformFamily::Power);
    REQUIRE(p12.p == 12.0);
    REQUIRE(format_transform(p12) == "power:12");

    const auto cheb = parse_transform("chebdelta:16:rho=-2:m=5");
    REQUIRE(cheb.width_multiplier == 5.0);
    REQUIRE(format_transform(cheb) == "chebdelta:16:rho=-2");

    const auto frob = parse_transform("gibbs:1:norm=frobenius");
    REQUIRE(frob.norm == NormMode::Frobenius);
    REQUIRE(format_transform(frob) == "gibbs:1:norm=frobenius");

    REQUIRE(format_transform(parse_transform("identity")) == "identity");
    REQUIRE(format_transform(parse_transform("exact_delta")) == "exact_delta");

    // Long-form alias; canonical spelling on the way out.
    REQUIRE(format_transform(parse_transform("exponential:16")) == "exp:16");

    auto narrow = parse_transform("power:2:m=3");
    REQUIRE(format_transform(narrow) == "power:2:m=3");
}

TEST_CASE("deferred shift parses but cannot be applied", "[transforms]") {
    const auto t = parse_transform("resolvent:8");
    REQUIRE(t.family == TransformFamily::Resolvent);
    REQUIRE_FALSE(std::isfinite(t.rho));
    REQUIRE_THROWS_AS(apply_f(t, ref_diag()), GnqaError);
}

TEST_CASE("transform parse failures", "[transforms]") {
    REQUIRE_THROWS_AS(parse_transform(""), ParseError);
    REQUIRE_THROWS_AS(parse_transform("nope:3"), ParseError);
    REQUIRE_THROWS_AS(parse_transform("power:abc"), ParseError);
    REQUIRE_THROWS_AS(parse_transform("power:2:bogus=1"), ParseError);
    REQUIRE_THROWS_AS(parse_transform("power:2:m=x"), ParseError);
    REQUIRE_THROWS_AS(parse_transform("power:2:norm=weird"), ParseError);
    REQUIRE_THROWS_AS(parse_transform("power:-3"), ParseError);
    REQUIRE_THROWS_AS(parse_transform("power:2:rho"), ParseError);
}

TEST_CASE("distribution report sorts by filter value with index ties", "[transforms]") {
    const auto rep =
        eigen_distribution_report(make(TransformFamily::Resolvent, 2.0, -2.2), ref_diag());
    REQUIRE(rep.transformed.size() == 4);
    REQUIRE(rep.transformed[0].first == 1.0);
    REQUIRE(rep.transformed[0].second == 1);  // equal values keep index order
    REQUIRE(rep.transformed[1].second == 2);
    REQUIRE(rep.transformed[2].second == 0);
    REQUIRE(rep.raw_sorted_desc == std::vector<double>{2.0, 2.0, -2.0, -2.0});

    const auto top =
        eigen_distribution_report(make(TransformFamily::Identity, 1.0), ref_diag(), 2);
    REQUIRE(top.transformed.size() == 2);
    REQUIRE(top.raw_sorted_desc.size() == 2);
}
