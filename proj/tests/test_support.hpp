#pragma once

// Reference implementations for the test suite, written along independent
// paths: naive per-amplitude products instead of the doubling kernels, direct
// per-mask Hamiltonian sums instead of pattern adds, central differences for
// derivatives, and a small dense solver. Slow on purpose; n stays <= 10.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "gnqa/common.hpp"
#include "gnqa/model.hpp"

namespace oracle {

/// Amplitude m of the product state: prod_k (bit_k(m) ? sin : cos) theta_k.
inline std::vector<double> product_state(const std::vector<double>& theta) {
    const int n = static_cast<int>(theta.size());
    std::vector<double> amp(std::uint64_t{1} << n);
    for (std::uint64_t m = 0; m < amp.size(); ++m) {
        double a = 1.0;
        for (int k = 0; k < n; ++k)
            a *= (m >> k & 1u) ? std::sin(theta[static_cast<std::size_t>(k)])
                               : std::cos(theta[static_cast<std::size_t>(k)]);
        amp[m] = a;
    }
    return amp;
}

/// Tangent state k: site k's vector replaced by (-sin, cos).
inline std::vector<double> derivative_state(const std::vector<double>& theta, int k) {
    const int n = static_cast<int>(theta.size());
    std::vector<double> amp(std::uint64_t{1} << n);
    for (std::uint64_t m = 0; m < amp.size(); ++m) {
        double a = 1.0;
        for (int j = 0; j < n; ++j) {
            const double t = theta[static_cast<std::size_t>(j)];
            if (j == k)
                a *= (m >> j & 1u) ? std::cos(t) : -std::sin(t);
            else
                a *= (m >> j & 1u) ? std::sin(t) : std::cos(t);
        }
        amp[m] = a;
    }
    return amp;
}

/// Spin energy of every basis index, one direct sum per mask.
inline std::vector<double> ising_diagonal(const gnqa::IsingHamiltonian& H) {
    std::vector<double> d(std::uint64_t{1} << H.n);
    for (std::uint64_t m = 0; m < d.size(); ++m) {
        double e = 0.0;
        for (int i = 0; i < H.n; ++i)
            e += H.h[static_cast<std::size_t>(i)] * (m >> i & 1u ? -1.0 : 1.0);
        for (const auto& c : H.couplings)
            e += c.v * (m >> c.i & 1u ? -1.0 : 1.0) * (m >> c.j & 1u ? -1.0 : 1.0);
        d[m] = e;
    }
    return d;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

/// <phi | diag(d) | phi> over full states.
inline double state_energy(const std::vector<double>& amp, const std::vector<double>& d) {
    double acc = 0.0;
    for (std::size_t i = 0; i < amp.size(); ++i) acc += amp[i] * amp[i] * d[i];
    return acc;
}

inline std::vector<double> fd_gradient(const std::function<double(const std::vector<double>&)>& f,
                                       std::vector<double> theta, double h) {
    std::vector<double> g(theta.size());
    for (std::size_t k = 0; k < theta.size(); ++k) {
        const double saved = theta[k];
        theta[k] = saved + h;
        const double up = f(theta);
        theta[k] = saved - h;
        const double dn = f(theta);
        theta[k] = saved;
        g[k] = (up - dn) / (2.0 * h);
    }
    return g;
}

/// Directional difference of a vector field: (F(x + h v) - F(x - h v)) / 2h.
inline std::vector<double> fd_matvec(
    const std::function<std::vector<double>(const std::vector<double>&)>& field,
    const std::vector<double>& x, const std::vector<double>& v, double h) {
    std::vector<double> up = x, dn = x;
    for (std::size_t i = 0; i < x.size(); ++i) {
        up[i] += h * v[i];
        dn[i] -= h * v[i];
    }
    const auto fu = field(up);
    const auto fd = field(dn);
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (fu[i] - fd[i]) / (2.0 * h);
    return out;
}

/// Dense curvature metric 2 (J^T H J - e0 I) assembled from full tangent
/// states; the quadratic-form identity the fast matvec must reproduce.
inline std::vector<std::vector<double>> dense_metric(const gnqa::IsingHamiltonian& H,
                                                     const std::vector<double>& theta,
                                                     double e0) {
    const std::size_t n = theta.size();
    const auto d = ising_diagonal(H);
    std::vector<std::vector<double>> cols;
    for (std::size_t k = 0; k < n; ++k) cols.push_back(derivative_state(theta, static_cast<int>(k)));
    std::vector<std::vector<double>> g(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t m = 0; m < d.size(); ++m) acc += cols[i][m] * d[m] * cols[j][m];
            g[i][j] = 2.0 * (acc - (i == j ? e0 : 0.0));
        }
    return g;
}

/// Plain Gaussian elimination with partial pivoting.
inline std::vector<double> dense_solve(std::vector<std::vector<double>> a,
                                       std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t r = n; r-- > 0;) {
        double acc = b[r];
        for (std::size_t k = r + 1; k < n; ++k) acc -= a[r][k] * x[k];
        x[r] = acc / a[r][r];
    }
    return x;
}

/// Seeded dense-ish random spin Hamiltonian for property tests.
inline gnqa::IsingHamiltonian random_ising(int n, std::uint64_t seed, double coupling_density = 0.7) {
    gnqa::Rng rng(seed);
    gnqa::IsingHamiltonian H;
    H.n = n;
    H.h.resize(static_cast<std::size_t>(n));
    for (double& h : H.h) h = rng.uniform_real(-1.0, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform_real() < coupling_density)
                H.couplings.push_back({i, j, rng.uniform_real(-1.0, 1.0)});
    return H;
}

inline std::vector<double> random_theta(int n, std::uint64_t seed) {
    gnqa::Rng rng(seed);
    std::vector<double> theta(static_cast<std::size_t>(n));
    for (double& t : theta) t = rng.uniform_real(0.1, 1.5);
    return theta;
}

}  // namespace oracle
