#pragma once

// Random pivot families and Monte Carlo checks of their concentration.

#include "posetramsey/oracle/sets.hpp"

#include <cmath>
#include <random>

namespace posetramsey::oracle {

/// splitmix64 finalizer. Consecutive small seeds fed straight into
/// mt19937_64 give measurably correlated first outputs, so seeds pass
/// through this mixer first.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits of one 64-bit draw.
inline double uniform53(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

/// Each level-`level` subset of [N] joins independently with probability q.
/// Stream: mt19937_64 seeded with mix_seed(seed), one uniform53 draw per
/// candidate in increasing mask order, included iff the draw is below q.
inline SetFamily sample_pivot_family(int N, int level, double q, std::uint64_t seed) {
    if (N < 0 || N > kMaxGroundSet || level < 0 || level > N) {
        throw std::invalid_argument("sample_pivot_family: bad N or level");
    }
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("sample_pivot_family: q must lie in [0, 1]");
    std::mt19937_64 gen(mix_seed(seed));
    SetFamily out;
    out.level = level;
    for_each_k_subset(N, level, [&](SetMask m) {
        if (uniform53(gen) < q) out.members.push_back(m);
    });
    return out;
}

inline std::size_t intersection_count(const SetFamily& a, const SetFamily& b) {
    std::size_t n = 0;
    for (SetMask m : a.members) n += b.contains(m) ? 1 : 0;
    return n;
}

struct HitStatistics {
    double mean = 0;
    double variance = 0;
    std::size_t trials = 0;

    [[nodiscard]] double standard_error() const { return trials ? std::sqrt(variance / static_cast<double>(trials)) : 0; }
};

/// |cone & K| over independent samples K with seeds base_seed, base_seed+1, ...
inline HitStatistics sample_hits(const SetFamily& cone, int N, double q, std::size_t trials,
                                 std::uint64_t base_seed = 0) {
    HitStatistics st;
    st.trials = trials;
    double sum = 0, sum2 = 0;
    for (std::size_t k = 0; k < trials; ++k) {
        const double x = static_cast<double>(intersection_count(cone, sample_pivot_family(N, cone.level, q, base_seed + k)));
        sum += x;
        sum2 += x * x;
    }
    if (trials) {
        st.mean = sum / static_cast<double>(trials);
        st.variance = trials > 1 ? (sum2 - sum * st.mean) / static_cast<double>(trials - 1) : 0.0;
    }
    return st;
}

struct ChernoffReport {
    double mu = 0;
    double frequency = 0;  ///< fraction of trials with count <= mu/2
    double bound = 0;      ///< exp(-mu/8)
    double standard_error = 0;
    std::size_t trials = 0;

    [[nodiscard]] bool holds() const { return frequency <= bound + 3.0 * standard_error; }
};

/// Empirical lower tail P(|cone & K| <= mu/2) against exp(-mu/8).
inline ChernoffReport chernoff_lower_tail(const SetFamily& cone, int N, double q, std::size_t trials,
                                          std::uint64_t base_seed = 0) {
    ChernoffReport r;
    r.trials = trials;
    r.mu = static_cast<double>(cone.count()) * q;
    r.bound = std::exp(-r.mu / 8.0);
    std::size_t low = 0;
    for (std::size_t k = 0; k < trials; ++k) {
        const auto hits = intersection_count(cone, sample_pivot_family(N, cone.level, q, base_seed + k));
        if (static_cast<double>(hits) <= r.mu / 2.0) ++low;
    }
    r.frequency = trials ? static_cast<double>(low) / static_cast<double>(trials) : 0.0;
    r.standard_error = trials ? std::sqrt(r.bound * (1.0 - r.bound) / static_cast<double>(trials)) : 0.0;
    return r;
}

} // namespace posetramsey::oracle
