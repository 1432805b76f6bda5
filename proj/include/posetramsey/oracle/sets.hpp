#pragma once

// Subsets of a small ground set {1..N} as bitmasks: element e is bit e-1.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace posetramsey::oracle {

using SetMask = std::uint32_t;

inline constexpr int kMaxGroundSet = 31;

/// Raised when an exhaustive computation is asked to go beyond its budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline SetMask full_set(int N) {
    if (N < 0 || N > kMaxGroundSet) throw std::invalid_argument("full_set: N out of range");
    return N == 0 ? 0u : (SetMask{1} << N) - 1u;
}

inline SetMask make_set(std::initializer_list<int> elements) {
    SetMask m = 0;
    for (int e : elements) {
        if (e < 1 || e > kMaxGroundSet) throw std::invalid_argument("make_set: element out of range");
        m |= SetMask{1} << (e - 1);
    }
    return m;
}

inline SetMask make_set(const std::vector<int>& elements) {
    SetMask m = 0;
    for (int e : elements) {
        if (e < 1 || e > kMaxGroundSet) throw std::invalid_argument("make_set: element out of range");
        m |= SetMask{1} << (e - 1);
    }
    return m;
}

inline std::vector<int> elements(SetMask m) {
    std::vector<int> out;
    while (m) {
        out.push_back(std::countr_zero(m) + 1);
        m &= m - 1;
    }
    return out;
}

inline int size(SetMask m) { return std::popcount(m); }
inline bool subset(SetMask a, SetMask b) { return (a & ~b) == 0; }

inline std::string to_string(SetMask m) {
    std::string out = "{";
    bool first = true;
    for (int e : elements(m)) {
        if (!first) out += ",";
        out += std::to_string(e);
        first = false;
    }
    return out + "}";
}

/// Calls f on every k-subset of {1..N} in increasing mask order.
template <class F>
void for_each_k_subset(int N, int k, F&& f) {
    if (k < 0 || k > N) return;
    if (k == 0) {
        f(SetMask{0});
        return;
    }
    const std::uint64_t limit = std::uint64_t{1} << N;
    std::uint64_t m = (std::uint64_t{1} << k) - 1;
    while (m < limit) {
        f(static_cast<SetMask>(m));
        // Gosper's hack: next mask with the same popcount.
        const std::uint64_t low = m & (~m + 1);
        const std::uint64_t ripple = m + low;
        m = (((ripple ^ m) >> 2) / low) | ripple;
    }
}

/// Calls f on every subset of `universe`.
template <class F>
void for_each_subset_of(SetMask universe, F&& f) {
    SetMask sub = 0;
    while (true) {
        f(sub);
        if (sub == universe) break;
        sub = (sub - universe) & universe;
    }
}

/// A family of equal-sized sets; members kept sorted and unique.
struct SetFamily {
    int level = 0;
    std::vector<SetMask> members;

    SetFamily() = default;
    SetFamily(int level_, std::vector<SetMask> members_) : level(level_), members(std::move(members_)) {
        normalize();
    }

    void normalize() {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        for (SetMask m : members) {
            if (size(m) != level) {
                throw std::invalid_argument("SetFamily: member " + to_string(m) + " is not at level " +
                                            std::to_string(level));
            }
        }
    }

    [[nodiscard]] bool contains(SetMask m) const { return std::binary_search(members.begin(), members.end(), m); }
    [[nodiscard]] std::size_t count() const { return members.size(); }
    [[nodiscard]] bool empty() const { return members.empty(); }

    friend bool operator==(const SetFamily&, const SetFamily&) = default;
};

/// The whole level {S subset [N] : |S| = k}.
inline SetFamily full_level(int N, int k) {
    SetFamily f;
    f.level = k;
    for_each_k_subset(N, k, [&](SetMask m) { f.members.push_back(m); });
    return f;
}

/// Probe data for one cone: ground set size, embedding ground set X, probe P,
/// the cone level and its bound on the intersection with X.
struct GroundSetInstance {
    int N = 0;
    SetMask X = 0;
    SetMask P = 0;
    int s = 0;     ///< level of an s-cone
    int t = 0;     ///< level of a t-cone
    int cap = 0;   ///< s-cone: |S & X| <= cap
    int floor = 0; ///< t-cone: |T & X| >= floor

    void validate() const {
        if (N < 1 || N > kMaxGroundSet) throw std::invalid_argument("GroundSetInstance: N out of range");
        const SetMask all = full_set(N);
        if (!subset(X, all) || !subset(P, all)) throw std::invalid_argument("GroundSetInstance: X, P must lie in [N]");
        if (s < 0 || s > N || t < 0 || t > N || cap < 0 || cap > N || floor < 0 || floor > N) {
            throw std::invalid_argument("GroundSetInstance: size parameter out of range");
        }
    }
};

} // namespace posetramsey::oracle
