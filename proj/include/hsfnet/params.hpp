#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace hsfnet {

// The three graph families: star-seeded base, wheel-seeded, and
// wheel-seeded with random deletion of rim edges.
enum class Variant { Base, Wheel, Deleted };

inline const char* variant_name(Variant v) {
    switch (v) {
        case Variant::Base: return "base";
        case Variant::Wheel: return "wheel";
        case Variant::Deleted: return "deleted";
    }
    return "?";
}

inline std::optional<Variant> variant_from_name(const std::string& s) {
    if (s == "base") return Variant::Base;
    if (s == "wheel") return Variant::Wheel;
    if (s == "deleted") return Variant::Deleted;
    return std::nullopt;
}

// Full recipe for one graph instance. p and seed are present iff the
// variant is Deleted.
struct ModelParams {
    Variant variant = Variant::Base;
    int m = 2;  // branching count, m >= 2
    int t = 0;  // generation index, t >= 0
    std::optional<double> p;
    std::optional<uint64_t> seed;

    static ModelParams base(int m, int t) { return {Variant::Base, m, t, {}, {}}; }
    static ModelParams wheel(int m, int t) { return {Variant::Wheel, m, t, {}, {}}; }
    static ModelParams deleted(int m, int t, double p, uint64_t seed) {
        return {Variant::Deleted, m, t, p, seed};
    }
};

inline void validate(const ModelParams& params) {
    if (params.m < 2) throw std::invalid_argument("m must be >= 2");
    if (params.t < 0) throw std::invalid_argument("t must be >= 0");
    if (params.variant == Variant::Deleted) {
        if (!params.p || !params.seed)
            throw std::invalid_argument("deleted variant requires p and seed");
        if (*params.p < 0.0 || *params.p > 1.0)
            throw std::invalid_argument("p must be in [0,1]");
    } else {
        if (params.p || params.seed)
            throw std::invalid_argument("p and seed apply only to the deleted variant");
    }
}

}  // namespace hsfnet
