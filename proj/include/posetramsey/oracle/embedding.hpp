#pragma once

// Induced embeddings of a small cube Q(source) into Q_N, and the
// normalization that makes the embedding's trace on a ground set X the
// identity.

#include "posetramsey/oracle/sets.hpp"

#include <optional>
#include <sstream>

namespace posetramsey::oracle {

/// image[A] is the image of the subset of `source` selected by the index
/// mask A (bit k picks source[k]).
struct EmbeddingMap {
    std::vector<int> source;
    std::vector<SetMask> image;

    [[nodiscard]] int dimension() const { return static_cast<int>(source.size()); }

    /// The subset of [N] an index mask stands for.
    [[nodiscard]] SetMask source_set(SetMask index_mask) const {
        SetMask m = 0;
        for (int b : elements(index_mask)) m |= SetMask{1} << (source[static_cast<std::size_t>(b - 1)] - 1);
        return m;
    }

    static EmbeddingMap over_first(int n, std::vector<SetMask> image) {
        EmbeddingMap e;
        for (int i = 1; i <= n; ++i) e.source.push_back(i);
        e.image = std::move(image);
        return e;
    }
};

class NotAnEmbedding : public std::invalid_argument {
public:
    NotAnEmbedding(const std::string& what, SetMask a, SetMask b) : std::invalid_argument(what), first(a), second(b) {}
    SetMask first;  ///< index masks of the offending pair
    SetMask second;
};

/// Throws NotAnEmbedding with a witness pair unless phi is injective and
/// A inside B exactly when phi(A) inside phi(B).
inline void validate_embedding(const EmbeddingMap& phi, int N) {
    const int n = phi.dimension();
    if (n < 0 || n > 10) throw std::invalid_argument("validate_embedding: dimension out of range");
    const std::size_t count = std::size_t{1} << n;
    if (phi.image.size() != count) throw std::invalid_argument("validate_embedding: image size must be 2^n");
    const SetMask all = full_set(N);
    for (SetMask a = 0; a < count; ++a) {
        if (!subset(phi.image[a], all)) throw NotAnEmbedding("image outside [N]", a, a);
    }
    for (SetMask a = 0; a < count; ++a) {
        for (SetMask b = 0; b < count; ++b) {
            if (subset(a, b) != subset(phi.image[a], phi.image[b])) {
                std::ostringstream msg;
                msg << "order not preserved between " << to_string(phi.source_set(a)) << " and "
                    << to_string(phi.source_set(b));
                throw NotAnEmbedding(msg.str(), a, b);
            }
        }
    }
}

struct NormalizedEmbedding {
    SetMask X = 0;
    EmbeddingMap phi_prime;
};

/// For each source coordinate i pick a(i) in phi({i}) outside every phi(A)
/// with A avoiding i; X = {a(i)} and phi'(A) = phi(A-hat). phi' has the same
/// image as phi and phi'(S) & X = S for every S inside X.
inline NormalizedEmbedding normalize_embedding(const EmbeddingMap& phi, int N) {
    validate_embedding(phi, N);
    const int n = phi.dimension();
    if (N <= n) throw std::invalid_argument("normalize_embedding: need N > n");
    const SetMask everything = (SetMask{1} << n) - 1;

    NormalizedEmbedding out;
    out.phi_prime.image = phi.image;
    for (int i = 0; i < n; ++i) {
        const SetMask rest = everything & ~(SetMask{1} << i);
        SetMask covered = 0;
        for_each_subset_of(rest, [&](SetMask A) { covered |= phi.image[A]; });
        const SetMask candidates = phi.image[SetMask{1} << i] & ~covered;
        if (candidates == 0) {
            // Cannot happen for a valid embedding.
            throw NotAnEmbedding("no private element for a singleton", SetMask{1} << i, rest);
        }
        const int a = std::countr_zero(candidates) + 1;
        out.phi_prime.source.push_back(a);
        out.X |= SetMask{1} << (a - 1);
    }
    return out;
}

} // namespace posetramsey::oracle
