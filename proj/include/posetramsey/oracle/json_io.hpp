#pragma once

// JSON forms for oracle inputs and outputs. Sets are sorted integer arrays.

#include "posetramsey/oracle/colouring.hpp"
#include "posetramsey/oracle/embedding.hpp"
#include "posetramsey/oracle/pivots.hpp"
#include "posetramsey/oracle/sets.hpp"

#include <nlohmann/json.hpp>

namespace posetramsey::oracle {

inline nlohmann::json set_to_json(SetMask m) { return elements(m); }

inline SetMask set_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw std::invalid_argument("set must be an array of integers");
    std::vector<int> e;
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw std::invalid_argument("set must be an array of integers");
        e.push_back(v.get<int>());
    }
    return make_set(e);
}

inline nlohmann::json family_to_json(const SetFamily& f) {
    nlohmann::json members = nlohmann::json::array();
    for (SetMask m : f.members) members.push_back(set_to_json(m));
    return {{"level", f.level}, {"members", members}};
}

inline SetFamily family_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("level") || !j.contains("members")) {
        throw std::invalid_argument("family needs 'level' and 'members'");
    }
    std::vector<SetMask> members;
    for (const auto& m : j.at("members")) members.push_back(set_from_json(m));
    return SetFamily(j.at("level").get<int>(), std::move(members));
}

inline nlohmann::json colouring_spec_to_json(const ColouringSpec& spec) {
    return {{"N", spec.N},
            {"n", spec.n},
            {"s", spec.s},
            {"t", spec.t},
            {"thresholds", spec.thresholds},
            {"families",
             {{"S1", family_to_json(spec.S1)},
              {"T1", family_to_json(spec.T1)},
              {"S2", family_to_json(spec.S2)},
              {"T2", family_to_json(spec.T2)}}}};
}

inline ColouringSpec colouring_spec_from_json(const nlohmann::json& j) {
    ColouringSpec spec;
    spec.N = j.at("N").get<int>();
    spec.n = j.at("n").get<int>();
    spec.s = j.at("s").get<int>();
    spec.t = j.at("t").get<int>();
    const auto th = j.at("thresholds").get<std::vector<int>>();
    if (th.size() != spec.thresholds.size()) throw std::invalid_argument("thresholds must have 5 entries");
    std::copy(th.begin(), th.end(), spec.thresholds.begin());
    const auto& fam = j.at("families");
    spec.S1 = family_from_json(fam.at("S1"));
    spec.T1 = family_from_json(fam.at("T1"));
    spec.S2 = family_from_json(fam.at("S2"));
    spec.T2 = family_from_json(fam.at("T2"));
    spec.validate();
    return spec;
}

/// Images listed by index mask, each with the source subset it comes from.
inline nlohmann::json embedding_to_json(const EmbeddingMap& phi) {
    nlohmann::json images = nlohmann::json::array();
    for (SetMask a = 0; a < phi.image.size(); ++a) {
        images.push_back({{"from", set_to_json(phi.source_set(a))}, {"to", set_to_json(phi.image[a])}});
    }
    return {{"n", phi.dimension()}, {"source", phi.source}, {"images", images}};
}

/// Accepts {"source": [...], "images": [{"from": [...], "to": [...]}, ...]}
/// covering every subset of the source exactly once.
inline EmbeddingMap embedding_from_json(const nlohmann::json& j) {
    EmbeddingMap phi;
    phi.source = j.at("source").get<std::vector<int>>();
    const int n = phi.dimension();
    if (n > 10) throw std::invalid_argument("embedding dimension too large");
    const std::size_t count = std::size_t{1} << n;
    phi.image.assign(count, 0);
    std::vector<bool> seen(count, false);
    for (const auto& entry : j.at("images")) {
        const SetMask from = set_from_json(entry.at("from"));
        SetMask index = 0;
        for (int e : elements(from)) {
            const auto it = std::find(phi.source.begin(), phi.source.end(), e);
            if (it == phi.source.end()) throw std::invalid_argument("embedding: 'from' leaves the source set");
            index |= SetMask{1} << (it - phi.source.begin());
        }
        if (seen[index]) throw std::invalid_argument("embedding: duplicate 'from' set");
        seen[index] = true;
        phi.image[index] = set_from_json(entry.at("to"));
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw std::invalid_argument("embedding: every subset of the source needs an image");
    }
    return phi;
}

inline nlohmann::json verdict_to_json(const PivotVerdict& v) {
    auto pair_json = [](const std::optional<std::pair<SetMask, SetMask>>& p) -> nlohmann::json {
        if (!p) return nullptr;
        return nlohmann::json::array({set_to_json(p->first), set_to_json(p->second)});
    };
    return {{"pass", v.pass()},
            {"cross_containment", v.cross_containment},
            {"containment_witness", pair_json(v.containment_witness)},
            {"condition1", v.condition1},
            {"condition1_witness", pair_json(v.condition1_witness)},
            {"condition2", v.condition2},
            {"condition2_witness", pair_json(v.condition2_witness)},
            {"probes1", v.probes1},
            {"probes2", v.probes2}};
}

} // namespace posetramsey::oracle
