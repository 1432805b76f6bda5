#pragma once

#include "posetramsey/oracle/sets.hpp"

namespace posetramsey::oracle {

inline constexpr int kDefaultEnumerationLimit = 20;

namespace detail {

inline void check_enumeration_budget(const GroundSetInstance& inst, int max_N) {
    inst.validate();
    if (inst.N > max_N) {
        throw BudgetExceeded("cone enumeration limited to N <= " + std::to_string(max_N) + ", got N = " +
                             std::to_string(inst.N));
    }
}

} // namespace detail

inline bool in_s_cone(const GroundSetInstance& inst, SetMask S) {
    return size(S) == inst.s && subset(S & ~inst.X, inst.P & ~inst.X) && size(S & inst.X) <= inst.cap;
}

inline bool in_t_cone(const GroundSetInstance& inst, SetMask T) {
    return size(T) == inst.t && subset(T & inst.X, inst.P & inst.X) && subset(inst.P & ~inst.X, T & ~inst.X) &&
           size(T & inst.X) >= inst.floor;
}

/// All S with |S| = s, S \ X inside P \ X and |S & X| <= cap.
inline SetFamily enumerate_s_cone(const GroundSetInstance& inst, int max_N = kDefaultEnumerationLimit) {
    detail::check_enumeration_budget(inst, max_N);
    SetFamily out;
    out.level = inst.s;
    for_each_k_subset(inst.N, inst.s, [&](SetMask S) {
        if (in_s_cone(inst, S)) out.members.push_back(S);
    });
    return out;
}

/// All T with |T| = t, T & X inside P & X, P \ X inside T and |T & X| >= floor.
inline SetFamily enumerate_t_cone(const GroundSetInstance& inst, int max_N = kDefaultEnumerationLimit) {
    detail::check_enumeration_budget(inst, max_N);
    SetFamily out;
    out.level = inst.t;
    for_each_k_subset(inst.N, inst.t, [&](SetMask T) {
        if (in_t_cone(inst, T)) out.members.push_back(T);
    });
    return out;
}

} // namespace posetramsey::oracle
