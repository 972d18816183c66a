#include "hsfnet/build.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "hsfnet/rational.hpp"

namespace hsfnet {
namespace {

// Number of vertices above level L, i.e. the id of the first level-L
// vertex: 1 + m + ... + m^(L-1).
uint64_t level_start(int m, int level) {
    uint64_t s = 0, pw = 1;
    for (int l = 0; l < level; ++l) {
        s += pw;
        pw *= static_cast<uint64_t>(m);
    }
    return s;
}

uint64_t upow(int m, int e) {
    uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= static_cast<uint64_t>(m);
    return r;
}

void check_size(int m, int t, const BuildOptions& opts) {
    BigInt v = (mpow(m, t + 2) - 1) / (m - 1);
    if (v > opts.size_cap)
        throw std::runtime_error("instance would have " + v.str() +
                                 " vertices, above the size cap of " +
                                 std::to_string(opts.size_cap));
}

// 53-bit uniform draw in [0,1); fully determined by the mt19937_64 spec.
double unit_draw(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Rim {
    std::vector<std::pair<uint32_t, uint32_t>> edges;  // surviving, canonical order
    std::vector<uint32_t> extra_degree;                // per bottom vertex, offset from bottom0
};

// Rim edges inside each seed block of m consecutive bottom vertices:
// a cycle for m >= 3, a single edge for m = 2. `keep` is called once per
// edge in canonical order and decides survival.
template <class Keep>
Rim make_rim(int m, int t, Keep&& keep) {
    const uint64_t blocks = upow(m, t);
    const uint64_t nbottom = blocks * static_cast<uint64_t>(m);
    Rim rim;
    rim.extra_degree.assign(nbottom, 0);
    for (uint64_t s = 0; s < blocks; ++s) {
        const uint32_t base = static_cast<uint32_t>(s * m);
        const int edges_in_block = (m == 2) ? 1 : m;
        for (int j = 0; j < edges_in_block; ++j) {
            uint32_t a = base + static_cast<uint32_t>(j);
            uint32_t b = base + static_cast<uint32_t>((j + 1) % m);
            if (!keep()) continue;
            rim.edges.emplace_back(a, b);
            ++rim.extra_degree[a];
            ++rim.extra_degree[b];
        }
    }
    return rim;
}

GraphInstance assemble(int m, int t, const Rim* rim, ModelParams params) {
    const uint64_t bottom0 = level_start(m, t + 1);
    const uint64_t nbottom = upow(m, t + 1);
    const uint64_t n = bottom0 + nbottom;

    std::vector<int32_t> levels(n);
    std::vector<uint64_t> offsets(n + 1, 0);

    for (int level = 0; level <= t; ++level) {
        const uint64_t start = level_start(m, level);
        const uint64_t count = upow(m, level);
        const uint64_t deg = upow(m, t + 1 - level);
        for (uint64_t j = 0; j < count; ++j) {
            levels[start + j] = level;
            offsets[start + j + 1] = deg;
        }
    }
    for (uint64_t j = 0; j < nbottom; ++j) {
        levels[bottom0 + j] = t + 1;
        offsets[bottom0 + j + 1] =
            static_cast<uint64_t>(t + 1) + (rim ? rim->extra_degree[j] : 0);
    }
    for (uint64_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];

    std::vector<uint32_t> adjacency(offsets[n]);
    std::vector<uint64_t> cursor(offsets.begin(), offsets.end() - 1);

    // Active at (level, j) covers the j-th block of m^(t+1-level)
    // consecutive bottom vertices. Sweeping levels in ascending order
    // keeps every neighbor list sorted.
    for (int level = 0; level <= t; ++level) {
        const uint64_t start = level_start(m, level);
        const uint64_t count = upow(m, level);
        const uint64_t width = upow(m, t + 1 - level);
        for (uint64_t j = 0; j < count; ++j) {
            const uint32_t active = static_cast<uint32_t>(start + j);
            const uint64_t first = bottom0 + j * width;
            for (uint64_t r = 0; r < width; ++r) {
                const uint32_t bottom = static_cast<uint32_t>(first + r);
                adjacency[cursor[active]++] = bottom;
                adjacency[cursor[bottom]++] = active;
            }
        }
    }

    if (rim) {
        for (auto [a, b] : rim->edges) {
            adjacency[cursor[bottom0 + a]++] = static_cast<uint32_t>(bottom0 + b);
            adjacency[cursor[bottom0 + b]++] = static_cast<uint32_t>(bottom0 + a);
        }
        for (uint64_t j = 0; j < nbottom; ++j) {
            auto first = adjacency.begin() + static_cast<int64_t>(offsets[bottom0 + j]);
            auto last = adjacency.begin() + static_cast<int64_t>(offsets[bottom0 + j + 1]);
            if (!std::is_sorted(first, last)) std::sort(first, last);
        }
    }

    return GraphInstance(std::move(offsets), std::move(adjacency), std::move(levels),
                         /*hub=*/0, std::move(params));
}

}  // namespace

GraphInstance build_base(int m, int t, const BuildOptions& opts) {
    ModelParams params = ModelParams::base(m, t);
    validate(params);
    check_size(m, t, opts);
    return assemble(m, t, nullptr, std::move(params));
}

GraphInstance build_wheel(int m, int t, const BuildOptions& opts) {
    ModelParams params = ModelParams::wheel(m, t);
    validate(params);
    check_size(m, t, opts);
    Rim rim = make_rim(m, t, [] { return true; });
    return assemble(m, t, &rim, std::move(params));
}

GraphInstance build_deleted(int m, int t, double p, uint64_t seed,
                            const BuildOptions& opts) {
    ModelParams params = ModelParams::deleted(m, t, p, seed);
    validate(params);
    check_size(m, t, opts);
    std::mt19937_64 rng(seed);
    Rim rim = make_rim(m, t, [&] { return !(unit_draw(rng) < p); });
    return assemble(m, t, &rim, std::move(params));
}

GraphInstance build(const ModelParams& params, const BuildOptions& opts) {
    validate(params);
    switch (params.variant) {
        case Variant::Base: return build_base(params.m, params.t, opts);
        case Variant::Wheel: return build_wheel(params.m, params.t, opts);
        case Variant::Deleted:
            return build_deleted(params.m, params.t, *params.p, *params.seed, opts);
    }
    throw std::logic_error("unknown variant");
}

}  // namespace hsfnet
