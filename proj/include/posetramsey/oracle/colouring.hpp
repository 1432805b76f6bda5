#pragma once

// Red/blue colourings of Q_N and the search for monochromatic induced
// copies of Q_n.

#include "posetramsey/oracle/embedding.hpp"
#include "posetramsey/oracle/sets.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>

namespace posetramsey::oracle {

enum class Colour : std::uint8_t { blue, red };

inline const char* colour_name(Colour c) { return c == Colour::blue ? "blue" : "red"; }

/// A colouring stored as a table over all 2^N subsets.
class Colouring {
public:
    static constexpr int kMaxN = 24;

    static Colouring from_function(int N, const std::function<Colour(SetMask)>& f) {
        if (N < 0 || N > kMaxN) throw std::invalid_argument("Colouring: N out of range");
        Colouring out;
        out.N_ = N;
        out.table_.resize(std::size_t{1} << N);
        for (std::size_t m = 0; m < out.table_.size(); ++m) out.table_[m] = f(static_cast<SetMask>(m));
        return out;
    }

    static Colouring uniform(int N, Colour c) {
        return from_function(N, [c](SetMask) { return c; });
    }

    /// Blue up to and including level `threshold`, red above it.
    static Colouring layered(int N, int threshold) {
        return from_function(N, [threshold](SetMask m) { return size(m) <= threshold ? Colour::blue : Colour::red; });
    }

    [[nodiscard]] int ground_size() const { return N_; }
    [[nodiscard]] Colour operator()(SetMask m) const { return table_[m]; }

private:
    int N_ = 0;
    std::vector<Colour> table_;
};

/// The six-region colouring: thresholds[0..4] are the level boundaries
/// n/3, 2n/3 + cn/4, N/2, N - 2n/3 - cn/4, N - n/3 (already integral).
struct ColouringSpec {
    int N = 0;
    int n = 0;
    int s = 0;
    int t = 0;
    std::array<int, 5> thresholds{};
    SetFamily S1, T1, S2, T2;

    void validate() const {
        if (N < 1 || N > Colouring::kMaxN || n < 1 || n > N) throw std::invalid_argument("ColouringSpec: bad N, n");
        if (thresholds[0] < 0 || thresholds[4] > N) throw std::invalid_argument("ColouringSpec: thresholds outside [0, N]");
        for (std::size_t k = 0; k + 1 < thresholds.size(); ++k) {
            if (thresholds[k] >= thresholds[k + 1]) {
                throw std::invalid_argument("ColouringSpec: thresholds must be strictly increasing");
            }
        }
        if (S1.level != s || T1.level != t || S2.level != N - t || T2.level != N - s) {
            throw std::invalid_argument("ColouringSpec: family levels must be s, t, N-t, N-s");
        }
        const SetMask all = full_set(N);
        for (const SetFamily* f : {&S1, &T1, &S2, &T2}) {
            for (SetMask m : f->members) {
                if (!subset(m, all)) throw std::invalid_argument("ColouringSpec: family member outside [N]");
            }
        }
    }
};

namespace detail {

inline bool has_subset_in(const SetFamily& F, SetMask A) {
    for (SetMask S : F.members) {
        if (subset(S, A)) return true;
    }
    return false;
}

inline bool has_superset_in(const SetFamily& F, SetMask A) {
    for (SetMask T : F.members) {
        if (subset(A, T)) return true;
    }
    return false;
}

} // namespace detail

inline Colour colour_of(const ColouringSpec& spec, SetMask A) {
    const int k = size(A);
    const auto& th = spec.thresholds;
    if (k < th[0]) return Colour::blue;
    if (k <= th[1]) return detail::has_subset_in(spec.S1, A) ? Colour::blue : Colour::red;
    if (k <= th[2]) return detail::has_superset_in(spec.T1, A) ? Colour::red : Colour::blue;
    if (k <= th[3]) return detail::has_subset_in(spec.S2, A) ? Colour::blue : Colour::red;
    if (k <= th[4]) return detail::has_superset_in(spec.T2, A) ? Colour::red : Colour::blue;
    return Colour::red;
}

inline Colouring build_colouring(const ColouringSpec& spec) {
    spec.validate();
    return Colouring::from_function(spec.N, [&spec](SetMask A) { return colour_of(spec, A); });
}

struct SearchLimits {
    int max_N = 9;
    int max_n = 3;
    std::uint64_t max_nodes = 50'000'000;
};

namespace detail {

class CopySearch {
public:
    CopySearch(const Colouring& colouring, int n, const SearchLimits& limits)
        : colouring_(colouring), n_(n), limits_(limits) {
        const std::size_t count = std::size_t{1} << n;
        for (SetMask a = 0; a < count; ++a) order_.push_back(a);
        std::stable_sort(order_.begin(), order_.end(), [](SetMask a, SetMask b) { return size(a) < size(b); });
        extra_.resize(count);
    }

    /// Looks for a normalized copy with ground set X in colour c.
    std::optional<EmbeddingMap> run(SetMask X, Colour c) {
        X_ = X;
        colour_ = c;
        outside_ = full_set(colouring_.ground_size()) & ~X;
        x_elems_ = elements(X);
        if (!extend(0)) return std::nullopt;
        EmbeddingMap phi;
        phi.source = x_elems_;
        phi.image.resize(extra_.size());
        for (SetMask a = 0; a < extra_.size(); ++a) phi.image[a] = spread(a) | extra_[a];
        return phi;
    }

private:
    SetMask spread(SetMask index_mask) const {
        SetMask m = 0;
        for (int b : elements(index_mask)) m |= SetMask{1} << (x_elems_[static_cast<std::size_t>(b - 1)] - 1);
        return m;
    }

    // Assigns the part outside X for order_[pos] and everything after it.
    bool extend(std::size_t pos) {
        if (pos == order_.size()) return true;
        const SetMask a = order_[pos];
        SetMask lower = 0;
        for (int b : elements(a)) lower |= extra_[a & ~(SetMask{1} << (b - 1))];
        const SetMask base = spread(a);
        const SetMask free = outside_ & ~lower;
        bool found = false;
        for_each_subset_of(free, [&](SetMask add) {
            if (found) return;
            if (++nodes_ > limits_.max_nodes) {
                throw BudgetExceeded("monochromatic copy search exceeded " + std::to_string(limits_.max_nodes) +
                                     " nodes");
            }
            const SetMask y = lower | add;
            if (colouring_(base | y) != colour_) return;
            extra_[a] = y;
            if (extend(pos + 1)) found = true;
        });
        return found;
    }

    const Colouring& colouring_;
    int n_;
    SearchLimits limits_;
    std::vector<SetMask> order_;
    std::vector<SetMask> extra_;
    std::vector<int> x_elems_;
    SetMask X_ = 0;
    SetMask outside_ = 0;
    Colour colour_ = Colour::blue;
    std::uint64_t nodes_ = 0;
};

} // namespace detail

/// Searches for a monochromatic induced copy of Q_n. Every copy has a
/// normalized form with ground set X where phi'(S) = S + Y(S) and Y is a
/// monotone map into subsets of [N] \ X, so the search runs over X and
/// monotone Y, pruning as soon as a colour differs.
inline std::optional<EmbeddingMap> find_monochromatic_copy(const Colouring& colouring, int n,
                                                           const SearchLimits& limits = {}) {
    const int N = colouring.ground_size();
    if (N > limits.max_N || n > limits.max_n) {
        throw BudgetExceeded("monochromatic copy search limited to N <= " + std::to_string(limits.max_N) +
                             ", n <= " + std::to_string(limits.max_n));
    }
    if (n < 0 || n > N) return std::nullopt;
    detail::CopySearch search(colouring, n, limits);
    std::optional<EmbeddingMap> hit;
    for (Colour c : {Colour::blue, Colour::red}) {
        for_each_k_subset(N, n, [&](SetMask X) {
            if (hit) return;
            hit = search.run(X, c);
        });
        if (hit) break;
    }
    return hit;
}

} // namespace posetramsey::oracle
