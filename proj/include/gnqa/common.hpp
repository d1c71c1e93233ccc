#pragma once

// Shared plumbing: error types, the desk-scale guard, deterministic RNG,
// and fixed-order reductions. Everything downstream assumes doubles.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gnqa {

struct GnqaError : std::runtime_error {
    explicit GnqaError(const std::string& what) : std::runtime_error(what) {}
};

struct DeskLimitExceeded : GnqaError {
    using GnqaError::GnqaError;
};
struct DimensionMismatch : GnqaError {
    using GnqaError::GnqaError;
};
struct UnresolvedParameter : GnqaError {
    using GnqaError::GnqaError;
};
struct KrylovBreakdown : GnqaError {
    using GnqaError::GnqaError;
};
struct SingularJacobian : GnqaError {
    using GnqaError::GnqaError;
};
struct RhoNotBelowLambda0 : GnqaError {
    using GnqaError::GnqaError;
};
struct SpectrumOutOfRange : GnqaError {
    using GnqaError::GnqaError;
};
struct ZeroImage : GnqaError {
    using GnqaError::GnqaError;
};
struct OverlapNonpositive : GnqaError {
    using GnqaError::GnqaError;
};
struct InfeasibleSpec : GnqaError {
    using GnqaError::GnqaError;
};
struct GenerationTimeout : GnqaError {
    using GnqaError::GnqaError;
};

/// Parse failure while reading an instance file. line/col are 1-based.
struct ParseError : GnqaError {
    ParseError(const std::string& what, int line_, int col_)
        : GnqaError("parse error at line " + std::to_string(line_) + ", col " +
                    std::to_string(col_) + ": " + what),
          line(line_),
          col(col_) {}
    int line;
    int col;
};

namespace detail {
inline int& desk_limit_storage() {
    static int limit = [] {
        if (const char* env = std::getenv("GNQA_DESK_LIMIT")) {
            char* end = nullptr;
            long v = std::strtol(env, &end, 10);
            if (end != env && v > 0 && v < 63) return static_cast<int>(v);
        }
        return 26;
    }();
    return limit;
}
}  // namespace detail

/// Largest variable count for which full 2^n arrays may be materialized.
/// Initialized from GNQA_DESK_LIMIT when set, otherwise 26.
inline int desk_limit() { return detail::desk_limit_storage(); }

inline void set_desk_limit(int n) {
    if (n <= 0 || n >= 63) throw GnqaError("desk limit must be in [1, 62]");
    detail::desk_limit_storage() = n;
}

inline void require_desk(int n, const char* where) {
    if (n > desk_limit())
        throw DeskLimitExceeded(std::string(where) + ": n = " + std::to_string(n) +
                                " exceeds desk limit " + std::to_string(desk_limit()));
}

/// mt19937_64 with project-owned draw helpers so that generated instances
/// are byte-identical across standard libraries (std::uniform_int_distribution
/// is implementation-defined).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform integer in [lo, hi], inclusive. Rejection keeps it unbiased.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next_u64());  // full range
        const std::uint64_t reject_above = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t draw;
        do {
            draw = next_u64();
        } while (draw >= reject_above);
        return lo + static_cast<std::int64_t>(draw % span);
    }

    /// Uniform integer in [0, count), unbiased; count = 0 means the full range.
    std::uint64_t uniform_int(std::uint64_t count) {
        if (count == 0) return next_u64();
        const std::uint64_t reject_above = UINT64_MAX - UINT64_MAX % count;
        std::uint64_t draw;
        do {
            draw = next_u64();
        } while (draw >= reject_above);
        return draw % count;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform_real(); }

  private:
    std::mt19937_64 engine_;
};

namespace detail {

/// Deterministic pairwise reduction of term(0) + ... + term(count - 1).
/// The recursion shape depends only on count, never on the data, so a given
/// length always sums in the same order.
template <class Term>
double pairwise_sum(std::uint64_t begin, std::uint64_t count, const Term& term) {
    if (count <= 16) {
        double acc = 0.0;
        for (std::uint64_t i = 0; i < count; ++i) acc += term(begin + i);
        return acc;
    }
    const std::uint64_t half = count / 2;
    return pairwise_sum(begin, half, term) + pairwise_sum(begin + half, count - half, term);
}

}  // namespace detail

template <class Term>
double pairwise_sum(std::uint64_t count, const Term& term) {
    return detail::pairwise_sum(0, count, term);
}

inline double pairwise_sum(std::span<const double> xs) {
    return pairwise_sum(xs.size(), [xs](std::uint64_t i) { return xs[i]; });
}

inline double norm2(std::span<const double> xs) {
    return std::sqrt(pairwise_sum(xs.size(), [xs](std::uint64_t i) { return xs[i] * xs[i]; }));
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    return pairwise_sum(a.size(), [&](std::uint64_t i) { return a[i] * b[i]; });
}

}  // namespace gnqa
