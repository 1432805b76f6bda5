#pragma once

// Independent reference implementations used by the unit and acceptance
// tests. Each one is deliberately written a different way from the library
// code it checks: vectors of ints instead of bitmasks, additive recurrences
// instead of products, plain nested loops instead of normal forms.

#include "posetramsey/certifier.hpp"
#include "posetramsey/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace oracles {

using posetramsey::oracle::SetMask;

/// Pascal's triangle in unsigned 64-bit integers (exact for n <= 60).
inline std::vector<std::vector<std::uint64_t>> pascal(int rows) {
    std::vector<std::vector<std::uint64_t>> t(static_cast<std::size_t>(rows + 1));
    for (int n = 0; n <= rows; ++n) {
        auto& row = t[static_cast<std::size_t>(n)];
        row.assign(static_cast<std::size_t>(n + 1), 1);
        for (int k = 1; k < n; ++k) {
            const auto& up = t[static_cast<std::size_t>(n - 1)];
            row[static_cast<std::size_t>(k)] = up[static_cast<std::size_t>(k - 1)] + up[static_cast<std::size_t>(k)];
        }
    }
    return t;
}

using Set = std::vector<int>; // sorted

inline Set to_vec(SetMask m) {
    Set out;
    for (int e = 1; e <= 31; ++e) {
        if (m >> (e - 1) & 1u) out.push_back(e);
    }
    return out;
}

inline bool includes(const Set& big, const Set& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline Set intersect(const Set& a, const Set& b) {
    Set out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Set minus(const Set& a, const Set& b) {
    Set out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// All k-subsets of {1..N} by recursive choice.
inline std::vector<Set> k_subsets(int N, int k) {
    std::vector<Set> out;
    Set cur;
    auto rec = [&](auto&& self, int next) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int e = next; e <= N; ++e) {
            cur.push_back(e);
            self(self, e + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

/// s-cone by listing k-subsets and testing the definition on vectors.
inline std::set<Set> s_cone(int N, const Set& X, const Set& P, int s, int cap) {
    std::set<Set> out;
    for (const auto& S : k_subsets(N, s)) {
        if (includes(minus(P, X), minus(S, X)) && static_cast<int>(intersect(S, X).size()) <= cap) out.insert(S);
    }
    return out;
}

inline std::set<Set> t_cone(int N, const Set& X, const Set& P, int t, int floor) {
    std::set<Set> out;
    for (const auto& T : k_subsets(N, t)) {
        if (includes(intersect(P, X), intersect(T, X)) && includes(minus(T, X), minus(P, X)) &&
            static_cast<int>(intersect(T, X).size()) >= floor) {
            out.insert(T);
        }
    }
    return out;
}

struct SimpleVerdict {
    bool cross = false;
    bool cond1 = true;
    bool cond2 = true;
};

/// The pivot predicate restated over all (P, X) in 2^N x 2^N.
inline SimpleVerdict pivot_predicate(const std::vector<Set>& S1, const std::vector<Set>& T1, int N, int n,
                                     const posetramsey::oracle::PivotSizes& z) {
    SimpleVerdict v;
    for (const auto& S : S1) {
        for (const auto& T : T1) v.cross = v.cross || includes(T, S);
    }
    const int total = 1 << N;
    for (int xm = 0; xm < total; ++xm) {
        const Set X = to_vec(static_cast<SetMask>(xm));
        if (static_cast<int>(X.size()) != n) continue;
        for (int pm = 0; pm < total; ++pm) {
            const Set P = to_vec(static_cast<SetMask>(pm));
            const Set PX = intersect(P, X);
            const Set PnX = minus(P, X);
            const int p = static_cast<int>(P.size()), px = static_cast<int>(PX.size());
            if (p == z.p1 && px == z.p1_x) {
                bool served = false;
                for (const auto& S : S1) {
                    const Set SX = intersect(S, X);
                    if (includes(SX, PX) && includes(PnX, minus(S, X)) && static_cast<int>(SX.size()) <= z.cap) {
                        served = true;
                        break;
                    }
                }
                v.cond1 = v.cond1 && served;
            }
            if (p == z.p2 && px == z.p2_x) {
                bool served = false;
                for (const auto& T : T1) {
                    const Set TX = intersect(T, X);
                    if (includes(PX, TX) && includes(minus(T, X), PnX) && static_cast<int>(TX.size()) >= z.floor) {
                        served = true;
                        break;
                    }
                }
                v.cond2 = v.cond2 && served;
            }
        }
    }
    return v;
}

inline std::vector<Set> members(const posetramsey::oracle::SetFamily& f) {
    std::vector<Set> out;
    for (SetMask m : f.members) out.push_back(to_vec(m));
    return out;
}

/// Whether a monochromatic induced copy of Q_n exists, by assigning images
/// to the 2^n source sets one at a time over all subsets of [N] and checking
/// injectivity, order in both directions and colour against every earlier
/// assignment.
inline bool brute_force_mono_copy(const posetramsey::oracle::Colouring& col, int n) {
    const int N = col.ground_size();
    const int count = 1 << n;
    const int targets = 1 << N;
    std::vector<int> image(static_cast<std::size_t>(count), -1);
    auto sub = [](int a, int b) { return (a & ~b) == 0; };
    auto rec = [&](auto&& self, int k) -> bool {
        if (k == count) return true;
        for (int y = 0; y < targets; ++y) {
            if (k > 0 && col(static_cast<SetMask>(y)) != col(static_cast<SetMask>(image[0]))) continue;
            bool ok = true;
            for (int j = 0; j < k && ok; ++j) {
                const int x = image[static_cast<std::size_t>(j)];
                ok = x != y && sub(j, k) == sub(x, y) && sub(k, j) == sub(y, x);
            }
            if (!ok) continue;
            image[static_cast<std::size_t>(k)] = y;
            if (self(self, k + 1)) return true;
        }
        return false;
    };
    return rec(rec, 0);
}

/// Random parameter vectors near the interesting region, filtered to those
/// that certify at epsilon. `anchor` is a good vector for this L; samples
/// mix coordinate-wise shrinkage of the anchor with uniform box draws.
inline std::vector<posetramsey::ParamVector> sample_feasible(const posetramsey::LayerSchedule& schedule,
                                                             const posetramsey::ParamVector& anchor, double epsilon,
                                                             std::size_t wanted, std::mt19937_64& gen,
                                                             std::size_t max_attempts = 200000) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::size_t L = schedule.size();
    const double width = 1.0 / static_cast<double>(2 * L + 1);
    std::vector<posetramsey::ParamVector> out;
    for (std::size_t attempt = 0; attempt < max_attempts && out.size() < wanted; ++attempt) {
        posetramsey::ParamVector p = posetramsey::ParamVector::zeros(L);
        const bool box = attempt % 4 == 3;
        for (std::size_t i = 0; i < L; ++i) {
            if (box) {
                p.c[i] = u(gen) * width;
                p.h[i] = u(gen) * width * 0.5;
            } else {
                p.c[i] = anchor.c[i] * std::pow(u(gen), 0.25);
                p.h[i] = anchor.h[i] * (0.8 + 0.6 * u(gen));
            }
        }
        if (posetramsey::certify(schedule, p, epsilon).verified) out.push_back(std::move(p));
    }
    return out;
}

} // namespace oracles
