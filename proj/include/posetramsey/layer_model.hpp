#pragma once

// Layered colouring model.
//
// The lower half of Q_N is split into a blue base followed by L pairs of
// layers. Every quantity is a fraction of n. A schedule fixes how far a
// monochromatic embedding may climb in each pair (red_climb for the S
// pivots, blue_climb for the T pivots); the optimization variables are the
// per-pair skip c_i and the slack h_i that lifts the t-level above s + c_i.

#include "posetramsey/exponent_math.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace posetramsey {

using Fraction = boost::rational<std::int64_t>;

template <class Real>
Real to_real(const Fraction& f) {
    return Real(f.numerator()) / Real(f.denominator());
}

class LengthMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Static data of one layer pair, before any c contributions.
struct Layer {
    std::size_t index = 0;
    Fraction bottom;
    Fraction top;
    Fraction red_level;  ///< red climb already spent below this pair
    Fraction red_climb;  ///< red climb allowed inside this pair
    Fraction blue_level; ///< blue climb spent above, counted from the bottom of X
    Fraction blue_climb;

    friend bool operator==(const Layer&, const Layer&) = default;
};

class LayerSchedule {
public:
    LayerSchedule() = default;

    /// Builds a schedule from travel budgets: base b[0], then b[1..L] and
    /// r[1..L] for each pair (stored here as r[0..L-1]). Requires positive
    /// entries and b_0 + sum r + sum b <= 1.
    static LayerSchedule from_travel(std::span<const Fraction> b, std::span<const Fraction> r) {
        if (r.empty() || b.size() != r.size() + 1) {
            throw std::invalid_argument("from_travel: need L >= 1 climbs and L+1 blue budgets");
        }
        Fraction total = 0;
        for (const auto& v : b) {
            if (v <= 0) throw std::invalid_argument("from_travel: blue budgets must be positive");
            total += v;
        }
        for (const auto& v : r) {
            if (v <= 0) throw std::invalid_argument("from_travel: red budgets must be positive");
            total += v;
        }
        if (total > 1) {
            throw std::invalid_argument("from_travel: travel budget exceeds 1");
        }

        LayerSchedule out;
        Fraction red_sum = 0;
        Fraction blue_sum = b[0];
        for (std::size_t j = 0; j < r.size(); ++j) {
            Layer layer;
            layer.index = j;
            layer.bottom = blue_sum + red_sum;
            layer.red_level = red_sum;
            layer.red_climb = r[j];
            layer.blue_climb = b[j + 1];
            layer.blue_level = blue_sum + b[j + 1];
            layer.top = layer.bottom + r[j] + b[j + 1];
            out.layers_.push_back(layer);
            red_sum += r[j];
            blue_sum += b[j + 1];
        }
        return out;
    }

    [[nodiscard]] std::size_t size() const { return layers_.size(); }
    [[nodiscard]] const Layer& operator[](std::size_t i) const { return layers_[i]; }
    [[nodiscard]] std::span<const Layer> layers() const { return layers_; }

    /// Least common denominator of all stored fractions (2L+1 for make_layers).
    [[nodiscard]] std::int64_t denominator() const {
        std::int64_t d = 1;
        for (const auto& l : layers_) {
            for (const Fraction* f : {&l.bottom, &l.top, &l.red_level, &l.red_climb,
                                      &l.blue_level, &l.blue_climb}) {
                d = std::lcm(d, f->denominator());
            }
        }
        return d;
    }

    friend bool operator==(const LayerSchedule&, const LayerSchedule&) = default;

private:
    friend LayerSchedule make_layers(std::size_t L);
    std::vector<Layer> layers_;
};

/// The uniform schedule with every climb equal to 1/(2L+1).
inline LayerSchedule make_layers(std::size_t L) {
    if (L < 1) {
        throw std::invalid_argument("make_layers: need at least one layer pair");
    }
    const auto denom = static_cast<std::int64_t>(2 * L + 1);
    LayerSchedule out;
    out.layers_.reserve(L);
    for (std::size_t i = 0; i < L; ++i) {
        const auto k = static_cast<std::int64_t>(i);
        Layer layer;
        layer.index = i;
        layer.bottom = Fraction(1 + 2 * k, denom);
        layer.top = Fraction(3 + 2 * k, denom);
        layer.red_level = Fraction(k, denom);
        layer.red_climb = Fraction(1, denom);
        layer.blue_level = Fraction(2 + k, denom);
        layer.blue_climb = Fraction(1, denom);
        out.layers_.push_back(layer);
    }
    return out;
}

/// Optimization variables: skip c_i and slack h_i per layer pair.
struct ParamVector {
    std::vector<double> c;
    std::vector<double> h;

    ParamVector() = default;
    ParamVector(std::vector<double> c_, std::vector<double> h_) : c(std::move(c_)), h(std::move(h_)) {}

    static ParamVector zeros(std::size_t L) { return {std::vector<double>(L, 0.0), std::vector<double>(L, 0.0)}; }

    [[nodiscard]] std::size_t size() const { return c.size(); }

    /// Lengths agree and 0 <= c_i <= 2, 0 <= h_i <= 1.
    [[nodiscard]] bool within_bounds() const {
        if (c.size() != h.size()) return false;
        return std::all_of(c.begin(), c.end(), [](double v) { return v >= 0.0 && v <= 2.0; }) &&
               std::all_of(h.begin(), h.end(), [](double v) { return v >= 0.0 && v <= 1.0; });
    }

    friend bool operator==(const ParamVector&, const ParamVector&) = default;
};

inline void check_lengths(const LayerSchedule& schedule, const ParamVector& params) {
    if (params.c.size() != schedule.size() || params.h.size() != schedule.size()) {
        throw LengthMismatch("parameter vector length " + std::to_string(params.c.size()) + "/" +
                             std::to_string(params.h.size()) + " does not match " +
                             std::to_string(schedule.size()) + " layers");
    }
}

template <class Real>
struct BasicDerivedQuantities {
    Real N{};
    std::vector<Real> s;
    std::vector<Real> t;
    std::vector<Real> top;
    std::vector<Real> Ks_log;    ///< s-cone lower bound
    std::vector<Real> Kt_log;    ///< t-cone lower bound
    std::vector<Real> Nt_log;    ///< t-neighbourhood of an s-set
    std::vector<Real> Nsect_log; ///< s-cone members removed per greedy step
};

using DerivedQuantities = BasicDerivedQuantities<double>;

enum class ConstraintFamily { intersection, probability, room_for_h, t_below_top, subfamily };

inline constexpr ConstraintFamily kAllFamilies[] = {
    ConstraintFamily::intersection, ConstraintFamily::probability, ConstraintFamily::room_for_h,
    ConstraintFamily::t_below_top, ConstraintFamily::subfamily};

inline std::string_view family_name(ConstraintFamily f) {
    switch (f) {
    case ConstraintFamily::intersection: return "intersection";
    case ConstraintFamily::probability: return "probability";
    case ConstraintFamily::room_for_h: return "room_for_h";
    case ConstraintFamily::t_below_top: return "t_below_top";
    case ConstraintFamily::subfamily: return "subfamily";
    }
    return "?";
}

struct ConstraintViolation {
    ConstraintFamily family;
    std::size_t layer;
    double margin;
};

/// Signed slack of every constraint instance. Positive means satisfied.
template <class Real>
struct BasicConstraintMargins {
    std::vector<Real> intersection;
    std::vector<Real> probability;
    std::vector<Real> room_for_h;
    std::vector<Real> t_below_top;
    std::vector<Real> subfamily;

    [[nodiscard]] const std::vector<Real>& family(ConstraintFamily f) const {
        switch (f) {
        case ConstraintFamily::intersection: return intersection;
        case ConstraintFamily::probability: return probability;
        case ConstraintFamily::room_for_h: return room_for_h;
        case ConstraintFamily::t_below_top: return t_below_top;
        case ConstraintFamily::subfamily: return subfamily;
        }
        return intersection;
    }

    [[nodiscard]] std::size_t size() const { return intersection.size(); }

    /// Optimizer-level feasibility: intersection, probability, room_for_h >= eps.
    [[nodiscard]] bool feasible(const Real& eps) const {
        for (std::size_t i = 0; i < size(); ++i) {
            if (intersection[i] < eps || probability[i] < eps || room_for_h[i] < eps) return false;
        }
        return true;
    }

    /// Every instance that keeps a vector from being certified at eps.
    /// t_below_top only needs to be nonnegative.
    [[nodiscard]] std::vector<ConstraintViolation> violations(const Real& eps) const {
        std::vector<ConstraintViolation> out;
        for (ConstraintFamily f : kAllFamilies) {
            const Real floor = f == ConstraintFamily::t_below_top ? Real(0) : eps;
            const auto& values = family(f);
            for (std::size_t i = 0; i < values.size(); ++i) {
                if (values[i] < floor) out.push_back({f, i, static_cast<double>(values[i])});
            }
        }
        return out;
    }

    [[nodiscard]] bool certifiable(const Real& eps) const { return violations(eps).empty(); }
};

using ConstraintMargins = BasicConstraintMargins<double>;

/// Per-layer levels and cone/neighbourhood exponents, evaluated in `Real`.
template <class Real>
BasicDerivedQuantities<Real> derive_as(const LayerSchedule& schedule, const ParamVector& params) {
    check_lengths(schedule, params);
    const std::size_t L = schedule.size();
    BasicDerivedQuantities<Real> d;
    Real c_sum = 0;
    for (double v : params.c) c_sum += Real(v);
    d.N = Real(2) + Real(2) * c_sum;

    d.s.resize(L);
    d.t.resize(L);
    d.top.resize(L);
    d.Ks_log.resize(L);
    d.Kt_log.resize(L);
    d.Nt_log.resize(L);
    d.Nsect_log.resize(L);

    Real c_below = 0; // sum of c_k for k < i
    for (std::size_t i = 0; i < L; ++i) {
        const Layer& layer = schedule[i];
        const Real bottom = to_real<Real>(layer.bottom);
        const Real top = to_real<Real>(layer.top);
        const Real red_level = to_real<Real>(layer.red_level);
        const Real red_climb = to_real<Real>(layer.red_climb);
        const Real blue_level = to_real<Real>(layer.blue_level);
        const Real blue_climb = to_real<Real>(layer.blue_climb);
        const Real ci(params.c[i]);
        const Real hi(params.h[i]);

        d.s[i] = bottom + c_below + red_climb;
        d.t[i] = d.s[i] + ci + hi;
        d.top[i] = top + c_below + ci;

        const Real room = d.N - d.top[i] - Real(1) + blue_level;
        const Real width = ci + hi;
        d.Ks_log[i] = entropy_exponent<Real>(Real(1) - red_level, red_climb);
        d.Kt_log[i] = entropy_exponent<Real>(blue_level, blue_climb) + entropy_exponent<Real>(room, hi);
        d.Nt_log[i] = entropy_exponent<Real>(d.N - d.s[i], d.t[i] - d.s[i]);
        d.Nsect_log[i] = entropy_exponent<Real>(red_climb, width) +
                         entropy_exponent<Real>(Real(1) - red_level - red_climb, width);
        c_below += ci;
    }
    return d;
}

inline DerivedQuantities derive(const LayerSchedule& schedule, const ParamVector& params) {
    return derive_as<double>(schedule, params);
}

template <class Real>
BasicConstraintMargins<Real> margins_from(const LayerSchedule& schedule, const ParamVector& params,
                                          const BasicDerivedQuantities<Real>& d) {
    const std::size_t L = schedule.size();
    BasicConstraintMargins<Real> m;
    m.intersection.resize(L);
    m.probability.resize(L);
    m.room_for_h.resize(L);
    m.t_below_top.resize(L);
    m.subfamily.resize(L);
    for (std::size_t i = 0; i < L; ++i) {
        const Layer& layer = schedule[i];
        const Real red_level = to_real<Real>(layer.red_level);
        const Real red_climb = to_real<Real>(layer.red_climb);
        const Real blue_level = to_real<Real>(layer.blue_level);
        const Real ci(params.c[i]);
        const Real hi(params.h[i]);
        m.intersection[i] = red_climb - red_climb * red_climb / (Real(1) - red_level) - (ci + hi);
        m.probability[i] = d.Kt_log[i] - d.Nt_log[i];
        m.room_for_h[i] = d.N - d.top[i] - Real(1) + blue_level - hi;
        m.t_below_top[i] = d.top[i] - d.t[i];
        m.subfamily[i] = d.Ks_log[i] - d.Nsect_log[i];
    }
    return m;
}

template <class Real>
BasicConstraintMargins<Real> constraint_margins_as(const LayerSchedule& schedule, const ParamVector& params) {
    return margins_from<Real>(schedule, params, derive_as<Real>(schedule, params));
}

inline ConstraintMargins constraint_margins(const LayerSchedule& schedule, const ParamVector& params) {
    return constraint_margins_as<double>(schedule, params);
}

} // namespace posetramsey
