#pragma once

// Spectral filters f(H) applied to a materialized diagonal, plus the
// free-energy curve rho(s) used to place the shift parameter and the
// residual diagnostic that predicts filter quality.
//
// Families whose raw values can overflow (Exponential, Resolvent) are
// evaluated in log space and returned rescaled so the dominant entry is 1.
// Every consumer in this library (state filtering, residuals, distribution
// reports) is invariant under positive rescaling of f, so this is exact.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "gnqa/common.hpp"
#include "gnqa/hilbert.hpp"
#include "gnqa/model.hpp"

namespace gnqa {

enum class TransformFamily {
    Identity,     // f(x) = x, diagnostics only
    Power,        // (1 - x/scale)^p
    Exponential,  // exp(-p x), max-shifted
    Gibbs,        // exp(-p x) / trace
    Dirichlet,    // truncated periodic delta centered at rho
    ChebDelta,    // truncated Chebyshev delta centered at rho
    Resolvent,    // (x - rho)^(-p), rho below the spectrum
    ExactDelta,   // indicator of the ground group, the idealized filter
};

inline const char* to_string(TransformFamily f) {
    switch (f) {
        case TransformFamily::Identity: return "identity";
        case TransformFamily::Power: return "power";
        case TransformFamily::Exponential: return "exp";
        case TransformFamily::Gibbs: return "gibbs";
        case TransformFamily::Dirichlet: return "dirichlet";
        case TransformFamily::ChebDelta: return "chebdelta";
        case TransformFamily::Resolvent: return "resolvent";
        case TransformFamily::ExactDelta: return "exact_delta";
    }
    return "unknown";
}

enum class NormMode {
    WidthSigma,  // divide by (width_multiplier * sigma of the spectrum)
    Frobenius,   // divide by the full 2-norm of the diagonal
};

struct SpectralTransform {
    TransformFamily family = TransformFamily::Resolvent;
    double p = 8.0;
    // Raw-scale spectral shift for Dirichlet / ChebDelta / Resolvent; families
    // that normalize the spectrum rescale rho by the same factor internally.
    double rho = std::numeric_limits<double>::quiet_NaN();
    NormMode norm = NormMode::WidthSigma;
    double width_multiplier = 5.0;

    bool needs_rho() const {
        return family == TransformFamily::Dirichlet || family == TransformFamily::ChebDelta ||
               family == TransformFamily::Resolvent;
    }

    void validate() const {
        const bool p_free =
            family == TransformFamily::Identity || family == TransformFamily::ExactDelta;
        if (!p_free && !(p > 0.0)) throw GnqaError("transform: order p must be positive");
        if (needs_rho() && !std::isfinite(rho))
            throw GnqaError(std::string("transform: ") + to_string(family) + " requires rho");
        if (norm == NormMode::WidthSigma && !(width_multiplier > 0.0))
            throw GnqaError("transform: width multiplier must be positive");
    }
};

/// Mean and width of the diagonal spectrum, fixed-order reductions.
struct DiagonalMoments {
    double mean = 0.0;
    double sigma = 0.0;
    double two_norm = 0.0;
    double min = 0.0;
    double max_abs = 0.0;
};

inline DiagonalMoments diagonal_moments(const DiagonalOperator& d) {
    const std::uint64_t m = d.values.size();
    DiagonalMoments out;
    out.mean = pairwise_sum(m, [&](std::uint64_t i) { return d.values[i]; }) /
               static_cast<double>(m);
    const double sq = pairwise_sum(m, [&](std::uint64_t i) { return d.values[i] * d.values[i]; });
    out.two_norm = std::sqrt(sq);
    const double var = sq / static_cast<double>(m) - out.mean * out.mean;
    out.sigma = var > 0.0 ? std::sqrt(var) : 0.0;
    out.min = d.values[0];
    for (double v : d.values) {
        out.min = std::min(out.min, v);
        out.max_abs = std::max(out.max_abs, std::abs(v));
    }
    return out;
}

namespace detail {

inline double ground_band(double lambda0) { return 1e-12 * std::max(1.0, std::abs(lambda0)); }

/// Scale used to bring the spectrum into the filter's working interval.
inline double norm_scale(const SpectralTransform& t, const DiagonalMoments& m) {
    const double s = t.norm == NormMode::WidthSigma ? t.width_multiplier * m.sigma : m.two_norm;
    return s;
}

}  // namespace detail

/// Element-wise filter values over the diagonal.
inline std::vector<double> apply_f(const SpectralTransform& t, const DiagonalOperator& d) {
    t.validate();
    const std::uint64_t m = d.values.size();
    std::vector<double> f(m, 0.0);

    switch (t.family) {
        case TransformFamily::Identity: {
            f = d.values;
            break;
        }
        case TransformFamily::Power: {
            const auto mom = diagonal_moments(d);
            const double scale = detail::norm_scale(t, mom);
            const double inv = scale > 0.0 ? 1.0 / scale : 0.0;
            const bool integer_p = t.p == std::floor(t.p);
            for (std::uint64_t i = 0; i < m; ++i) {
                const double base = 1.0 - d.values[i] * inv;
                if (base < 0.0 && !integer_p)
                    throw SpectrumOutOfRange(
                        "power transform: negative base with non-integer order");
                f[i] = std::pow(base, t.p);
            }
            break;
        }
        case TransformFamily::Exponential: {
            const double dmin = diagonal_min(d);
            for (std::uint64_t i = 0; i < m; ++i) f[i] = std::exp(-t.p * (d.values[i] - dmin));
            break;
        }
        case TransformFamily::Gibbs: {
            const double dmin = diagonal_min(d);
            for (std::uint64_t i = 0; i < m; ++i) f[i] = std::exp(-t.p * (d.values[i] - dmin));
            const double trace = pairwise_sum(m, [&](std::uint64_t i) { return f[i]; });
            for (double& x : f) x /= trace;
            break;
        }
        case TransformFamily::Dirichlet: {
            const auto mom = diagonal_moments(d);
            const double scale = detail::norm_scale(t, mom);
            const double inv = scale > 0.0 ? 1.0 / scale : 0.0;
            const double rho_hat = t.rho * inv;
            const int p = std::max(1, static_cast<int>(std::llround(t.p)));
            const double pi = std::numbers::pi;
            for (std::uint64_t i = 0; i < m; ++i) {
                const double x = d.values[i] * inv;
                if (std::abs(x) >= 1.0)
                    throw SpectrumOutOfRange("dirichlet transform: normalized eigenvalue >= 1");
                const double delta = x - rho_hat;
                double acc = 1.0;
                for (int k = 1; k <= p; ++k) acc += 2.0 * std::cos(pi * k * delta);
                f[i] = acc / (2.0 * pi);
            }
            // The kernel is a symmetric complex sum; spot-check that the
            // imaginary parts cancel pairwise as expected.
            const std::uint64_t sample = std::min<std::uint64_t>(m, 1024);
            for (std::uint64_t i = 0; i < sample; ++i) {
                const double delta = d.values[i] * inv - rho_hat;
                std::complex<double> z(0.0, 0.0);
                for (int k = -p; k <= p; ++k)
                    z += std::exp(std::complex<double>(0.0, pi * k * delta));
                if (std::abs(z.imag()) > 1e-12)
                    throw GnqaError("dirichlet transform: imaginary residue above 1e-12");
            }
            break;
        }
        case TransformFamily::ChebDelta: {
            const auto mom = diagonal_moments(d);
            const double scale = detail::norm_scale(t, mom);
            const double inv = scale > 0.0 ? 1.0 / scale : 0.0;
            const double rho_hat = t.rho * inv;
            if (std::abs(rho_hat) >= 1.0)
                throw SpectrumOutOfRange("chebdelta transform: normalized rho outside (-1, 1)");
            const int p = std::max(1, static_cast<int>(std::llround(t.p)));
            std::vector<double> t_rho(static_cast<std::size_t>(p) + 1);
            t_rho[0] = 1.0;
            if (p >= 1) t_rho[1] = rho_hat;
            for (int k = 2; k <= p; ++k) t_rho[k] = 2.0 * rho_hat * t_rho[k - 1] - t_rho[k - 2];
            for (std::uint64_t i = 0; i < m; ++i) {
                const double x = d.values[i] * inv;
                if (std::abs(x) >= 1.0)
                    throw SpectrumOutOfRange("chebdelta transform: normalized eigenvalue >= 1");
                double tk1 = 1.0, tk = x, acc = 0.5;
                for (int k = 1; k <= p; ++k) {
                    acc += t_rho[static_cast<std::size_t>(k)] * tk;
                    const double next = 2.0 * x * tk - tk1;
                    tk1 = tk;
                    tk = next;
                }
                f[i] = acc * (2.0 / std::numbers::pi);
            }
            break;
        }
        case TransformFamily::Resolvent: {
            const double lambda0 = diagonal_min(d);
            if (!(t.rho < lambda0))
                throw RhoNotBelowLambda0("resolvent transform: rho = " + std::to_string(t.rho) +
                                         " is not below lambda0 = " + std::to_string(lambda0));
            const double log_gap = std::log(lambda0 - t.rho);
            for (std::uint64_t i = 0; i < m; ++i)
                f[i] = std::exp(-t.p * (std::log(d.values[i] - t.rho) - log_gap));
            break;
        }
        case TransformFamily::ExactDelta: {
            const double lambda0 = diagonal_min(d);
            const double band = detail::ground_band(lambda0);
            for (std::uint64_t i = 0; i < m; ++i)
                f[i] = d.values[i] <= lambda0 + band ? 1.0 : 0.0;
            break;
        }
    }
    return f;
}

/// zeta = f(H) phi / |f(H) phi|, with f precomputed by the caller.
inline DenseState apply_rf_precomputed(const std::vector<double>& f, const DenseState& phi) {
    if (f.size() != phi.amp.size()) throw DimensionMismatch("apply_rf: filter size");
    DenseState zeta;
    zeta.n = phi.n;
    zeta.amp.resize(phi.amp.size());
    for (std::size_t i = 0; i < f.size(); ++i) zeta.amp[i] = f[i] * phi.amp[i];
    const double nrm = norm2(zeta.amp);
    if (!(nrm > 0.0)) throw ZeroImage("apply_rf: filtered state has zero norm");
    const double inv = 1.0 / nrm;
    for (double& a : zeta.amp) a *= inv;
    return zeta;
}

inline DenseState apply_rf(const SpectralTransform& t, const DenseState& phi,
                           const DiagonalOperator& d) {
    if (phi.n != d.n) throw DimensionMismatch("apply_rf: state vs diagonal");
    return apply_rf_precomputed(apply_f(t, d), phi);
}

/// rho(s) = -(1/s) ln Tr exp(-s H), evaluated with a max shift so large
/// spectra cannot overflow.
inline double rho_estimate(const DiagonalOperator& d, double s) {
    if (!(s > 0.0)) throw GnqaError("rho_estimate: s must be positive");
    const double dmin = diagonal_min(d);
    const std::uint64_t m = d.values.size();
    const double sum = pairwise_sum(
        m, [&](std::uint64_t i) { return std::exp(-s * (d.values[i] - dmin)); });
    return dmin - std::log(sum) / s;
}

struct RhoCalibration {
    double rho = 0.0;
    double s = 0.0;
    enum class Status { Ok, BoundaryS, SigmaFallback } status = Status::Ok;
};

/// Pick s so that the relative offset (lambda0 - rho(s)) / |lambda0| lands
/// within 10% of target_rel_err. rho(s) increases monotonically in s, so a
/// bracket plus bisection suffices. Spectra with lambda0 = 0 have no relative
/// scale; they fall back to an absolute offset of 0.1 sigma below lambda0
/// (one unit when the spectrum is flat).
inline RhoCalibration rho_calibrate(const DiagonalOperator& d, double target_rel_err,
                                    double s_min = 1e-9, double s_max = 1e6) {
    if (!(target_rel_err > 0.0)) throw GnqaError("rho_calibrate: target must be positive");
    const double lambda0 = diagonal_min(d);

    if (lambda0 == 0.0) {
        const auto mom = diagonal_moments(d);
        RhoCalibration out;
        out.rho = mom.sigma > 0.0 ? lambda0 - 0.1 * mom.sigma : lambda0 - 1.0;
        out.s = 0.0;
        out.status = RhoCalibration::Status::SigmaFallback;
        return out;
    }

    const double scale = std::abs(lambda0);
    auto rel_err = [&](double s) { return (lambda0 - rho_estimate(d, s)) / scale; };

    double lo = 1.0, hi = 1.0;
    if (rel_err(1.0) >= target_rel_err) {
        while (rel_err(hi) > target_rel_err) {
            hi *= 2.0;
            if (hi > s_max) {
                RhoCalibration out;
                out.s = s_max;
                out.rho = rho_estimate(d, s_max);
                out.status = RhoCalibration::Status::BoundaryS;
                return out;
            }
        }
    } else {
        while (rel_err(lo) < target_rel_err) {
            lo *= 0.5;
            if (lo < s_min) {
                RhoCalibration out;
                out.s = s_min;
                out.rho = rho_estimate(d, s_min);
                out.status = RhoCalibration::Status::BoundaryS;
                return out;
            }
        }
    }

    // Invariant: rel_err(lo) >= target >= rel_err(hi).
    RhoCalibration out;
    for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        const double err = rel_err(mid);
        if (std::abs(err - target_rel_err) <= 0.1 * target_rel_err) {
            out.rho = rho_estimate(d, mid);
            out.s = mid;
            return out;
        }
        (err > target_rel_err ? lo : hi) = mid;
    }
    out.s = std::sqrt(lo * hi);
    out.rho = rho_estimate(d, out.s);
    return out;
}

/// Tr exp(-s H) through the Chebyshev series of exp on the rescaled spectrum;
/// the k-th coefficient is the modified Bessel value I_k at the effective
/// argument. Converges to rho_estimate as the order grows. At low orders the
/// truncated trace can lose positivity, in which case the log yields NaN.
inline double rho_via_chebyshev(const DiagonalOperator& d, double s, int order) {
    if (!(s > 0.0)) throw GnqaError("rho_via_chebyshev: s must be positive");
    if (order < 1) throw GnqaError("rho_via_chebyshev: order must be at least 1");
    double c = 0.0;
    for (double v : d.values) c = std::max(c, std::abs(v));
    const double s_eff = s * c;

    // a_0 = I_0, a_k = 2 (-1)^k I_k; signs fold the exp(-x) reflection in.
    std::vector<double> coeff(static_cast<std::size_t>(order) + 1);
    for (int k = 0; k <= order; ++k) {
        const double ik = std::cyl_bessel_i(static_cast<double>(k), s_eff);
        coeff[static_cast<std::size_t>(k)] = (k == 0 ? 1.0 : 2.0) * (k % 2 ? -ik : ik);
    }

    const double inv = c > 0.0 ? 1.0 / c : 0.0;
    const std::uint64_t m = d.values.size();
    const double trace = pairwise_sum(m, [&](std::uint64_t i) {
        const double x = d.values[i] * inv;
        double tk1 = 1.0, tk = x;
        double acc = coeff[0];
        for (int k = 1; k <= order; ++k) {
            acc += coeff[static_cast<std::size_t>(k)] * tk;
            const double next = 2.0 * x * tk - tk1;
            tk1 = tk;
            tk = next;
        }
        return acc;
    });
    return -std::log(trace) / s;
}

struct ResidualReport {
    double r = 0.0;       // sum over excited states of (f_k / f_ground)^2
    double bound = 0.0;   // 2 - 2 / sqrt(1 + r)
    std::uint64_t ground_degeneracy = 0;
};

/// Filter quality diagnostic. The whole ground multiplicity is excluded from
/// the sum, so degenerate instances are scored by their excited weight only.
inline ResidualReport transform_residual(const SpectralTransform& t, const DiagonalOperator& d) {
    const std::vector<double> f = apply_f(t, d);
    const double lambda0 = diagonal_min(d);
    const double band = detail::ground_band(lambda0);

    double f_ground = 0.0;
    bool found = false;
    for (std::uint64_t i = 0; i < d.values.size(); ++i) {
        if (d.values[i] <= lambda0 + band) {
            f_ground = f[i];
            found = true;
            break;
        }
    }
    if (!found || f_ground == 0.0)
        throw GnqaError("transform_residual: filter vanishes on the ground state");

    ResidualReport out;
    out.ground_degeneracy = ground_degeneracy(d);
    const double inv = 1.0 / f_ground;
    out.r = pairwise_sum(d.values.size(), [&](std::uint64_t i) {
        if (d.values[i] <= lambda0 + band) return 0.0;
        const double ratio = f[i] * inv;
        return ratio * ratio;
    });
    out.bound = 2.0 - 2.0 / std::sqrt(1.0 + out.r);
    return out;
}

struct EigenDistribution {
    // (filter value, basis index) sorted by value descending; capped by `top`.
    std::vector<std::pair<double, std::uint64_t>> transformed;
    std::vector<double> raw_sorted_desc;  // reference spectrum, same cap
};

/// Parse "family:p[:key=value...]" (keys: rho, m, norm=sigma|frobenius).
/// Examples: "resolvent:8:rho=-4.2", "power:12", "chebdelta:16:rho=-2:m=5".
/// A missing rho is allowed here (calibration fills it in later); apply_f
/// still rejects the transform if rho never arrives.
inline SpectralTransform parse_transform(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t colon = text.find(':', start);
        if (colon == std::string::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, colon - start));
        start = colon + 1;
    }
    if (parts.empty() || parts[0].empty()) throw ParseError("transform: empty spec", 1, 1);

    SpectralTransform t;
    const std::string& fam = parts[0];
    if (fam == "identity") t.family = TransformFamily::Identity;
    else if (fam == "power") t.family = TransformFamily::Power;
    else if (fam == "exp" || fam == "exponential") t.family = TransformFamily::Exponential;
    else if (fam == "gibbs") t.family = TransformFamily::Gibbs;
    else if (fam == "dirichlet") t.family = TransformFamily::Dirichlet;
    else if (fam == "chebdelta") t.family = TransformFamily::ChebDelta;
    else if (fam == "resolvent") t.family = TransformFamily::Resolvent;
    else if (fam == "exact_delta") t.family = TransformFamily::ExactDelta;
    else throw ParseError("transform: unknown family '" + fam + "'", 1, 1);

    auto to_double = [&](const std::string& s, const char* what) {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(what);
            return v;
        } catch (const std::exception&) {
            throw ParseError(std::string("transform: bad ") + what + " '" + s + "'", 1, 1);
        }
    };

    std::size_t next = 1;
    if (parts.size() > 1 && parts[1].find('=') == std::string::npos) {
        t.p = to_double(parts[1], "order");
        next = 2;
    }
    for (std::size_t i = next; i < parts.size(); ++i) {
        const std::size_t eq = parts[i].find('=');
        if (eq == std::string::npos)
            throw ParseError("transform: expected key=value, got '" + parts[i] + "'", 1, 1);
        const std::string key = parts[i].substr(0, eq);
        const std::string val = parts[i].substr(eq + 1);
        if (key == "rho") t.rho = to_double(val, "rho");
        else if (key == "m") t.width_multiplier = to_double(val, "width multiplier");
        else if (key == "norm") {
            if (val == "sigma") t.norm = NormMode::WidthSigma;
            else if (val == "frobenius") t.norm = NormMode::Frobenius;
            else throw ParseError("transform: unknown norm '" + val + "'", 1, 1);
        } else {
            throw ParseError("transform: unknown key '" + key + "'", 1, 1);
        }
    }
    const bool p_free =
        t.family == TransformFamily::Identity || t.family == TransformFamily::ExactDelta;
    if (!p_free && !(t.p > 0.0)) throw ParseError("transform: order p must be positive", 1, 1);
    if (t.norm == NormMode::WidthSigma && !(t.width_multiplier > 0.0))
        throw ParseError("transform: width multiplier must be positive", 1, 1);
    return t;
}

inline std::string format_transform(const SpectralTransform& t) {
    char buf[64];
    std::string out = to_string(t.family);
    if (t.family != TransformFamily::Identity && t.family != TransformFamily::ExactDelta) {
        std::snprintf(buf, sizeof(buf), ":%.17g", t.p);
        out += buf;
    }
    if (t.needs_rho() && std::isfinite(t.rho)) {
        std::snprintf(buf, sizeof(buf), ":rho=%.17g", t.rho);
        out += buf;
    }
    if (t.norm == NormMode::Frobenius) out += ":norm=frobenius";
    else if (t.width_multiplier != 5.0) {
        std::snprintf(buf, sizeof(buf), ":m=%.17g", t.width_multiplier);
        out += buf;
    }
    return out;
}

inline EigenDistribution eigen_distribution_report(const SpectralTransform& t,
                                                   const DiagonalOperator& d,
                                                   std::uint64_t top = 0) {
    const std::vector<double> f = apply_f(t, d);
    EigenDistribution out;
    out.transformed.reserve(f.size());
    for (std::uint64_t i = 0; i < f.size(); ++i) out.transformed.push_back({f[i], i});
    std::sort(out.transformed.begin(), out.transformed.end(),
              [](const auto& a, const auto& b) {
                  return a.first != b.first ? a.first > b.first : a.second < b.second;
              });
    out.raw_sorted_desc = d.values;
    std::sort(out.raw_sorted_desc.begin(), out.raw_sorted_desc.end(), std::greater<>());
    if (top > 0 && top < out.transformed.size()) {
        out.transformed.resize(top);
        out.raw_sorted_desc.resize(top);
    }
    return out;
}

}  // namespace gnqa
