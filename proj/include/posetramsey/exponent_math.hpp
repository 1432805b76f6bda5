#pragma once

// Growth exponents of binomial coefficients.
//
// A binomial C(Cn, dn) behaves like B^n for large n, with
//
//     B = C^C / (d^d (C-d)^(C-d)).
//
// Everything here works with ln B so that products of binomials become
// sums and comparisons between families of sets become sign checks.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace posetramsey {

/// Real type used whenever a result must not hinge on double rounding.
using ExtendedReal = boost::multiprecision::cpp_bin_float_50;
using BigInt = boost::multiprecision::cpp_int;

/// Natural log of a per-n growth base: the quantity is about exp(n * value).
struct LogBase {
    double value = 0.0;

    [[nodiscard]] double base() const { return std::exp(value); }
    friend bool operator==(const LogBase&, const LogBase&) = default;
};

enum class EntropyMode {
    /// d <= 0 or d >= C returns 0, like the reference optimizer.
    appendix,
    /// As appendix, but d > C (an empty family) is reported as an error.
    strict,
};

namespace detail {

template <class Real>
bool is_finite(const Real& v) {
    using std::isfinite;
    using boost::multiprecision::isfinite;
    return isfinite(v);
}

} // namespace detail

/// C ln C - d ln d - (C-d) ln(C-d), evaluated in `Real`.
///
/// Outside 0 < d < C the result is 0. That matches the reference code and
/// keeps the constraint functions continuous at the zero-width boundary
/// d = 0; in strict mode d > C throws instead.
template <class Real>
Real entropy_exponent(const Real& C, const Real& d, EntropyMode mode = EntropyMode::appendix) {
    using std::log;
    using boost::multiprecision::log;
    if (!detail::is_finite(C) || !detail::is_finite(d)) {
        throw std::domain_error("entropy_exponent: non-finite argument");
    }
    if (!(C > 0)) {
        throw std::domain_error("entropy_exponent: C must be positive");
    }
    if (mode == EntropyMode::strict && d > C) {
        throw std::domain_error("entropy_exponent: d exceeds C (empty binomial)");
    }
    if (d <= 0 || d >= C) {
        return Real(0);
    }
    const Real rest = C - d;
    return Real(C * log(C) - d * log(d) - rest * log(rest));
}

inline LogBase entropy_log(double C, double d, EntropyMode mode = EntropyMode::appendix) {
    return LogBase{entropy_exponent<double>(C, d, mode)};
}

/// Exact C(a, b); zero outside 0 <= b <= a.
inline BigInt exact_binomial(std::uint64_t a, std::int64_t b) {
    if (b < 0 || static_cast<std::uint64_t>(b) > a) {
        return BigInt(0);
    }
    std::uint64_t k = static_cast<std::uint64_t>(b);
    if (k > a - k) {
        k = a - k;
    }
    BigInt result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // result * (a-k+i) / i is integral; split the gcd out first so the
        // division happens on the smaller factor.
        std::uint64_t num = a - k + i;
        std::uint64_t den = i;
        const std::uint64_t g = std::gcd(num, den);
        num /= g;
        den /= g;
        result /= den;
        result *= num;
    }
    return result;
}

/// ln(a!) in extended precision.
inline ExtendedReal log_factorial(std::uint64_t a) {
    ExtendedReal acc = 0;
    for (std::uint64_t k = 2; k <= a; ++k) {
        acc += boost::multiprecision::log(ExtendedReal(k));
    }
    return acc;
}

/// n! / (n^(n + 1/2) e^(-n)). Decreases from e at n = 1 towards sqrt(2 pi).
inline double stirling_ratio(std::uint64_t n) {
    if (n < 1) {
        throw std::domain_error("stirling_ratio: n must be at least 1");
    }
    const ExtendedReal x(n);
    const ExtendedReal log_ratio =
        log_factorial(n) - (x + ExtendedReal(0.5)) * boost::multiprecision::log(x) + x;
    return static_cast<double>(boost::multiprecision::exp(log_ratio));
}

/// ln C(a, b) / a, the finite-n counterpart of entropy_log(1, b/a).
inline double normalized_log_binomial(std::uint64_t a, std::int64_t b) {
    const BigInt value = exact_binomial(a, b);
    if (value == 0) {
        throw std::domain_error("normalized_log_binomial: binomial is zero");
    }
    const ExtendedReal lv = boost::multiprecision::log(ExtendedReal(value));
    return static_cast<double>(lv / ExtendedReal(a));
}

} // namespace posetramsey
