#pragma once

// Exhaustive check of the pivot-family conditions.
//
// Condition 1 asks that every probe (P, X) with |X| = n, |P| = p1 and
// |P & X| = p1_x is served by some S in the S-family:
//     P & X  inside S & X,   S \ X  inside P \ X,   |S & X| <= cap.
// Condition 2 asks the same of the T-family for probes with |P| = p2 and
// |P & X| = p2_x:
//     T & X  inside P & X,   P \ X  inside T \ X,   |T & X| >= floor.
// Additionally no S may be contained in any T.
//
// The above-the-middle families satisfy the same shape of conditions with
// complemented sizes; see PivotSizes::dual.

#include "posetramsey/oracle/sets.hpp"

#include <optional>
#include <utility>

namespace posetramsey::oracle {

inline constexpr int kDefaultConditionLimit = 9;

struct PivotSizes {
    int p1 = 0;
    int p1_x = 0;
    int cap = 0;
    int p2 = 0;
    int p2_x = 0;
    int floor = 0;

    /// Sizes satisfied by complemented families: (S, T) -> (T^c, S^c).
    [[nodiscard]] PivotSizes dual(int N, int n) const {
        return PivotSizes{N - p2, n - p2_x, n - floor, N - p1, n - p1_x, n - cap};
    }

    friend bool operator==(const PivotSizes&, const PivotSizes&) = default;
};

using ProbePair = std::pair<SetMask, SetMask>; ///< (P, X)

struct PivotVerdict {
    bool cross_containment = false;
    std::optional<std::pair<SetMask, SetMask>> containment_witness; ///< (S, T) with S inside T
    bool condition1 = true;
    std::optional<ProbePair> condition1_witness; ///< a probe no S serves
    bool condition2 = true;
    std::optional<ProbePair> condition2_witness;
    std::size_t probes1 = 0;
    std::size_t probes2 = 0;

    [[nodiscard]] bool pass() const { return !cross_containment && condition1 && condition2; }
};

/// Calls f(P, X) for every X of size n and P with |P| = p, |P & X| = px.
template <class F>
void for_each_probe(int N, int n, int p, int px, F&& f) {
    const SetMask all = full_set(N);
    for_each_k_subset(N, n, [&](SetMask X) {
        const SetMask outside = all & ~X;
        const int out_size = N - n;
        const int py = p - px;
        if (px < 0 || px > n || py < 0 || py > out_size) return;
        // Enumerate subsets of X of size px and of X^c of size py through
        // index masks over each part.
        const std::vector<int> in_elems = elements(X);
        const std::vector<int> out_elems = elements(outside);
        auto spread = [](SetMask index_mask, const std::vector<int>& elems) {
            SetMask m = 0;
            for (int b : elements(index_mask)) m |= SetMask{1} << (elems[static_cast<std::size_t>(b - 1)] - 1);
            return m;
        };
        for_each_k_subset(n, px, [&](SetMask a) {
            const SetMask inside = spread(a, in_elems);
            for_each_k_subset(out_size, py, [&](SetMask b) { f(inside | spread(b, out_elems), X); });
        });
    });
}

inline bool serves_condition1(SetMask S, SetMask P, SetMask X, int cap) {
    return subset(P & X, S & X) && subset(S & ~X, P & ~X) && size(S & X) <= cap;
}

inline bool serves_condition2(SetMask T, SetMask P, SetMask X, int floor) {
    return subset(T & X, P & X) && subset(P & ~X, T & ~X) && size(T & X) >= floor;
}

inline PivotVerdict check_pivot_conditions(const SetFamily& S1, const SetFamily& T1, int N, int n,
                                           const PivotSizes& sizes, int max_N = kDefaultConditionLimit) {
    if (N < 1 || N > kMaxGroundSet || n < 0 || n > N) throw std::invalid_argument("check_pivot_conditions: bad N, n");
    if (N > max_N) {
        throw BudgetExceeded("pivot condition check limited to N <= " + std::to_string(max_N) + ", got N = " +
                             std::to_string(N));
    }
    PivotVerdict v;
    for (SetMask S : S1.members) {
        for (SetMask T : T1.members) {
            if (subset(S, T)) {
                v.cross_containment = true;
                v.containment_witness = {S, T};
                break;
            }
        }
        if (v.cross_containment) break;
    }

    for_each_probe(N, n, sizes.p1, sizes.p1_x, [&](SetMask P, SetMask X) {
        ++v.probes1;
        if (!v.condition1) return;
        for (SetMask S : S1.members) {
            if (serves_condition1(S, P, X, sizes.cap)) return;
        }
        v.condition1 = false;
        v.condition1_witness = {P, X};
    });
    for_each_probe(N, n, sizes.p2, sizes.p2_x, [&](SetMask P, SetMask X) {
        ++v.probes2;
        if (!v.condition2) return;
        for (SetMask T : T1.members) {
            if (serves_condition2(T, P, X, sizes.floor)) return;
        }
        v.condition2 = false;
        v.condition2_witness = {P, X};
    });
    return v;
}

/// Complements every member inside [N].
inline SetFamily dualize(const SetFamily& F, int N) {
    const SetMask all = full_set(N);
    SetFamily out;
    out.level = N - F.level;
    out.members.reserve(F.members.size());
    for (SetMask m : F.members) {
        if (!subset(m, all)) throw std::invalid_argument("dualize: member outside [N]");
        out.members.push_back(all & ~m);
    }
    out.normalize();
    return out;
}

/// Conditions for the families above the middle level, given the sizes of
/// the families below it.
inline PivotVerdict check_above_pivot_conditions(const SetFamily& S2, const SetFamily& T2, int N, int n,
                                                 const PivotSizes& below_sizes,
                                                 int max_N = kDefaultConditionLimit) {
    return check_pivot_conditions(S2, T2, N, n, below_sizes.dual(N, n), max_N);
}

} // namespace posetramsey::oracle
