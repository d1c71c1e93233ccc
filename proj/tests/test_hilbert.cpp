#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "gnqa/ansatz.hpp"
#include "gnqa/hilbert.hpp"
#include "gnqa/model.hpp"
#include "test_support.hpp"

using namespace gnqa;
using Catch::Matchers::WithinAbs;

namespace {

QuboProblem tiny_qubo() {
    QuboProblem q;
    q.n = 2;
    q.add(0, 0, -1.0);
    q.add(1, 1, -1.0);
    q.add(0, 1, 2.0);
    return q;
}

}  // namespace

TEST_CASE("diagonal of the two-variable example", "[hilbert]") {
    const auto d = build_diagonal(to_ising(tiny_qubo()));
    REQUIRE(d.values == std::vector<double>{2.0, -2.0, -2.0, 2.0});
}

TEST_CASE("pattern adds match the per-mask oracle", "[hilbert]") {
    const IsingHamiltonian H = oracle::random_ising(6, 17);
    const auto d = build_diagonal(H);
    const auto ref = oracle::ising_diagonal(H);
    for (std::size_t m = 0; m < ref.size(); ++m)
        REQUIRE_THAT(d.values[m], WithinAbs(ref[m], 1e-12));
}

TEST_CASE("pubo diagonal handles degree above two", "[hilbert]") {
    PuboProblem p;
    p.n = 5;
    p.terms.push_back({{}, 0.25});
    p.terms.push_back({{1}, -0.5});
    p.terms.push_back({{0, 3}, 1.5});
    p.terms.push_back({{0, 2, 4}, -1.0});
    p.terms.push_back({{1, 2, 3, 4}, 0.75});

    const auto d = build_diagonal(p);
    for (std::uint64_t m = 0; m < d.values.size(); ++m)
        REQUIRE_THAT(d.values[m], WithinAbs(p.value(m), 1e-13));
}

TEST_CASE("product state amplitudes and norm", "[hilbert]") {
    const auto theta = oracle::random_theta(7, 5);
    const auto s = build_state(theta);
    const auto ref = oracle::product_state(theta);
    for (std::size_t m = 0; m < ref.size(); ++m)
        REQUIRE_THAT(s.amp[m], WithinAbs(ref[m], 1e-13));
    REQUIRE_THAT(norm2(s.amp), WithinAbs(1.0, 1e-12));
}

TEST_CASE("center start is the uniform state", "[hilbert]") {
    const auto s = build_state(std::vector<double>(4, std::numbers::pi / 4.0));
    for (double a : s.amp) REQUIRE_THAT(a, WithinAbs(0.25, 1e-14));
}

TEST_CASE("shifted state equals rebuilding at the shifted angle", "[hilbert]") {
    const auto theta = oracle::random_theta(5, 9);
    auto moved = theta;
    moved[3] += 0.37;
    const auto a = shifted_state(theta, 3, 0.37);
    const auto b = build_state(moved);
    REQUIRE(a.amp == b.amp);
    REQUIRE_THROWS_AS(shifted_state(theta, 5, 0.1), DimensionMismatch);
}

TEST_CASE("overlap and expectation agree with direct sums", "[hilbert]") {
    const auto t1 = oracle::random_theta(6, 21);
    const auto t2 = oracle::random_theta(6, 22);
    const auto s1 = build_state(t1);
    const auto s2 = build_state(t2);
    REQUIRE_THAT(overlap(s1, s2), WithinAbs(oracle::dot(s1.amp, s2.amp), 1e-12));

    const IsingHamiltonian H = oracle::random_ising(6, 23);
    const auto d = build_diagonal(H);
    REQUIRE_THAT(expectation(s1, d), WithinAbs(oracle::state_energy(s1.amp, d.values), 1e-12));
}

TEST_CASE("jacobian pullback matches explicit tangent states", "[hilbert]") {
    const auto theta = oracle::random_theta(8, 31);
    DenseState target = build_state(oracle::random_theta(8, 32));
    const auto y = jacobian_pullback(theta, target);
    for (int k = 0; k < 8; ++k) {
        const auto col = oracle::derivative_state(theta, k);
        REQUIRE_THAT(y[static_cast<std::size_t>(k)],
                     WithinAbs(oracle::dot(col, target.amp), 1e-12));
    }
}

TEST_CASE("tangent columns are orthonormal and orthogonal to the state", "[hilbert]") {
    for (int n : {3, 10}) {
        const auto theta = oracle::random_theta(n, 40 + static_cast<std::uint64_t>(n));
        const auto phi = oracle::product_state(theta);
        std::vector<std::vector<double>> cols;
        for (int k = 0; k < n; ++k) cols.push_back(oracle::derivative_state(theta, k));
        for (int i = 0; i < n; ++i) {
            REQUIRE_THAT(oracle::dot(cols[static_cast<std::size_t>(i)], phi), WithinAbs(0.0, 1e-12));
            for (int j = 0; j < n; ++j)
                REQUIRE_THAT(oracle::dot(cols[static_cast<std::size_t>(i)],
                                         cols[static_cast<std::size_t>(j)]),
                             WithinAbs(i == j ? 1.0 : 0.0, 1e-12));
        }
    }
}

TEST_CASE("quarter-turn shifts reconstruct the tangent column", "[hilbert]") {
    // phi(theta + pi/4 e_k) - phi(theta - pi/4 e_k) = sqrt(2) * d_k phi(theta)
    const auto theta = oracle::random_theta(6, 51);
    for (int k = 0; k < 6; ++k) {
        const auto plus = shifted_state(theta, k, std::numbers::pi / 4.0);
        const auto minus = shifted_state(theta, k, -std::numbers::pi / 4.0);
        const auto col = oracle::derivative_state(theta, k);
        for (std::size_t m = 0; m < col.size(); ++m)
            REQUIRE_THAT(plus.amp[m] - minus.amp[m],
                         WithinAbs(std::numbers::sqrt2 * col[m], 1e-10));
    }
}

TEST_CASE("spectrum summary groups the ground multiplicity", "[hilbert]") {
    const auto d = build_diagonal(to_ising(tiny_qubo()));
    const auto s = spectrum_of(d);
    REQUIRE(s.lambda0 == -2.0);
    REQUIRE(s.degeneracy == 2);
    REQUIRE(s.values.front() == -2.0);
    REQUIRE(s.values.back() == 2.0);
    REQUIRE(diagonal_min(d) == -2.0);
    REQUIRE(ground_degeneracy(d) == 2);

    // The grouping band is relative to |lambda0|.
    DiagonalOperator wide;
    wide.n = 2;
    wide.values = {-1e6, -1e6 + 1e-8, 0.0, 1.0};
    REQUIRE(ground_degeneracy(wide) == 2);
    wide.values = {-1e6, -1e6 + 1.0, 0.0, 1.0};
    REQUIRE(ground_degeneracy(wide) == 1);
}

TEST_CASE("normalize rejects the zero state", "[hilbert]") {
    DenseState s;
    s.n = 2;
    s.amp = {0.0, 0.0, 0.0, 0.0};
    REQUIRE_THROWS_AS(normalize(s), ZeroImage);
    s.amp = {3.0, 0.0, 4.0, 0.0};
    normalize(s);
    REQUIRE_THAT(norm2(s.amp), WithinAbs(1.0, 1e-15));
    REQUIRE_THAT(s.amp[0], WithinAbs(0.6, 1e-15));
}

TEST_CASE("state construction respects the desk limit", "[hilbert]") {
    const int saved = desk_limit();
    set_desk_limit(4);
    REQUIRE_THROWS_AS(build_state(std::vector<double>(5, 0.3)), DeskLimitExceeded);
    IsingHamiltonian H = oracle::random_ising(5, 3);
    REQUIRE_THROWS_AS(build_diagonal(H), DeskLimitExceeded);
    set_desk_limit(saved);
}
