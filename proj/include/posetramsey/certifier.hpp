#pragma once

// Certification of parameter vectors and the numeric constants of the
// six-layer construction.

#include "posetramsey/exponent_math.hpp"
#include "posetramsey/layer_model.hpp"
#include "posetramsey/optimizer.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace posetramsey {

inline constexpr int kCertificateSchemaVersion = 1;

/// Sign disagreements between double and extended margins are only
/// tolerated below this magnitude.
inline constexpr double kPrecisionWarningThreshold = 1e-8;

struct DerivedSummary {
    double N = 0.0;
    std::vector<double> s;
    std::vector<double> t;
    std::vector<double> top;
};

struct Certificate {
    int schema_version = kCertificateSchemaVersion;
    std::size_t L = 0;
    ParamVector params;
    double epsilon = 0.0;
    double c_total = 0.0;
    ConstraintMargins margins;
    DerivedSummary derived;
    bool verified = false;
    std::optional<std::int64_t> rationalized_denominator;

    // Recomputed on every certify; not part of the serialized form.
    bool precision_warning = false;
    std::vector<ConstraintViolation> failures;
};

/// Re-evaluates every margin with 50 significant digits and records the
/// verdict. Stored values are the extended margins rounded to double.
inline Certificate certify(const LayerSchedule& schedule, const ParamVector& params, double epsilon,
                           std::optional<std::int64_t> rationalized_denominator = std::nullopt) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("certify: epsilon must be a positive finite number");
    }
    check_lengths(schedule, params);

    const auto derived_ext = derive_as<ExtendedReal>(schedule, params);
    const auto margins_ext = margins_from<ExtendedReal>(schedule, params, derived_ext);
    const auto margins_dbl = constraint_margins(schedule, params);

    Certificate cert;
    cert.L = schedule.size();
    cert.params = params;
    cert.epsilon = epsilon;
    cert.c_total = objective(params);
    cert.rationalized_denominator = rationalized_denominator;

    auto narrow = [](const std::vector<ExtendedReal>& v) {
        std::vector<double> out;
        out.reserve(v.size());
        for (const auto& x : v) out.push_back(static_cast<double>(x));
        return out;
    };
    cert.margins.intersection = narrow(margins_ext.intersection);
    cert.margins.probability = narrow(margins_ext.probability);
    cert.margins.room_for_h = narrow(margins_ext.room_for_h);
    cert.margins.t_below_top = narrow(margins_ext.t_below_top);
    cert.margins.subfamily = narrow(margins_ext.subfamily);
    cert.derived.N = static_cast<double>(derived_ext.N);
    cert.derived.s = narrow(derived_ext.s);
    cert.derived.t = narrow(derived_ext.t);
    cert.derived.top = narrow(derived_ext.top);

    for (ConstraintFamily f : kAllFamilies) {
        const auto& ext = margins_ext.family(f);
        const auto& dbl = margins_dbl.family(f);
        for (std::size_t i = 0; i < ext.size(); ++i) {
            const bool ext_neg = ext[i] < 0;
            const bool dbl_neg = dbl[i] < 0.0;
            if (ext_neg != dbl_neg && boost::multiprecision::abs(ext[i]) > kPrecisionWarningThreshold) {
                cert.precision_warning = true;
            }
        }
    }

    cert.failures = margins_ext.violations(ExtendedReal(epsilon));
    cert.verified = params.within_bounds() && cert.failures.empty();
    return cert;
}

/// Rounds every c_i down and every h_i up to a multiple of 1/D. Values
/// within 1e-9 (relative) of a grid point snap to it first, so decimal
/// inputs such as 0.05 with D = 60 land on 3/60 rather than 4/60.
inline ParamVector rationalize(const ParamVector& params, std::int64_t D) {
    if (D < 1) throw std::invalid_argument("rationalize: denominator must be >= 1");
    const auto den = static_cast<double>(D);
    auto grid = [den](double v, bool up) {
        const double scaled = v * den;
        const double nearest = std::round(scaled);
        if (std::abs(scaled - nearest) <= 1e-9 * std::max(1.0, std::abs(scaled))) return nearest / den;
        return (up ? std::ceil(scaled) : std::floor(scaled)) / den;
    };
    ParamVector out = params;
    for (double& v : out.c) v = grid(v, false);
    for (double& v : out.h) v = grid(v, true);
    return out;
}

enum class Relation { approx, at_most, at_least, greater };

struct ConstantEntry {
    std::string name;
    double value = 0.0;
    double paper_value = 0.0;
    double tolerance = 1e-4;
    Relation relation = Relation::approx;
    std::string formula;

    [[nodiscard]] bool within_tolerance() const { return std::abs(value - paper_value) <= tolerance; }

    [[nodiscard]] bool relation_holds() const {
        switch (relation) {
        case Relation::approx: return true;
        case Relation::at_most: return value <= paper_value;
        case Relation::at_least: return value >= paper_value;
        case Relation::greater: return value > paper_value;
        }
        return false;
    }

    [[nodiscard]] bool passes() const { return within_tolerance() && relation_holds(); }
};

inline std::string relation_symbol(Relation r) {
    switch (r) {
    case Relation::approx: return "~";
    case Relation::at_most: return "<=";
    case Relation::at_least: return ">=";
    case Relation::greater: return ">";
    }
    return "?";
}

struct ConstantsTable {
    std::vector<ConstantEntry> entries;

    [[nodiscard]] bool all_pass() const {
        for (const auto& e : entries) {
            if (!e.passes()) return false;
        }
        return true;
    }

    [[nodiscard]] const ConstantEntry& at(const std::string& name) const {
        for (const auto& e : entries) {
            if (e.name == name) return e;
        }
        throw std::out_of_range("ConstantsTable: no entry " + name);
    }
};

/// Growth bases of the six-layer construction (c = 1/3, h = 0.05),
/// recomputed from the entropy estimate.
///
/// The downstream products use the rounded bounds the argument carries
/// forward (1.9179, 1.9041, 1.8898, 1.8893), since those are what the
/// probabilistic estimates multiply.
inline ConstantsTable paper_constants() {
    using std::exp;
    const double c_half = 1.0 / 6.0;
    const double h = 0.05;
    const double width = c_half + h;
    const double q = 0.525;

    const double s_cone = entropy_log(1.0, 1.0 / 3.0).base();
    const double t_cone = exp(entropy_log(2.0 / 3.0, 1.0 / 3.0).value + entropy_log(2.0 / 3.0 + c_half, h).value);
    const double removal = exp(entropy_log(1.0 / 3.0, width).value + entropy_log(2.0 / 3.0, width).value);
    const double neighbourhood = entropy_log(4.0 / 3.0 + 2.0 * c_half, width).base();

    ConstantsTable table;
    table.entries.push_back({"s_cone_base", s_cone, 1.88988, 1e-4, Relation::approx, "3 / 4^(1/3)"});
    table.entries.push_back({"t_cone_base", t_cone, 1.917913, 1e-4, Relation::approx,
                             "binom(2n/3, n/3) binom(5n/6, hn) base"});
    table.entries.push_back({"removal_base", removal, 1.88929, 1e-4, Relation::approx,
                             "binom(n/3, wn) binom(2n/3, wn) base, w = 1/6 + h"});
    table.entries.push_back({"neighbourhood_base", neighbourhood, 1.9041, 1e-4, Relation::at_most,
                             "binom(5n/3, wn) base"});
    table.entries.push_back({"expectation_base", 1.9179 * q, 1.0068, 1e-4, Relation::greater, "1.9179 * q"});
    table.entries.push_back({"bad_base", 1.9041 * q, 0.9997, 1e-4, Relation::at_most, "1.9041 * q"});
    table.entries.push_back({"subfamily_base", 1.8898 / 1.8893, 1.0002, 1e-4, Relation::at_least, "1.8898 / 1.8893"});
    table.entries.push_back({"pivot_probability", q, 0.525, 1e-4, Relation::approx, "q"});
    return table;
}

} // namespace posetramsey
