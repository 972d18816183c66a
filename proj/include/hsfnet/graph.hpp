#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hsfnet/params.hpp"

namespace hsfnet {

constexpr int kLevelUnknown = -1;

// Immutable simple undirected graph in CSR form with sorted neighbor
// lists and a per-vertex hierarchy level. Safe to share across threads
// once constructed.
class GraphInstance {
public:
    GraphInstance() = default;
    GraphInstance(std::vector<uint64_t> offsets, std::vector<uint32_t> adjacency,
                  std::vector<int32_t> levels, uint32_t hub,
                  std::optional<ModelParams> params)
        : offsets_(std::move(offsets)),
          adjacency_(std::move(adjacency)),
          levels_(std::move(levels)),
          hub_(hub),
          params_(std::move(params)) {}

    uint32_t n() const { return offsets_.empty() ? 0 : static_cast<uint32_t>(offsets_.size() - 1); }
    uint64_t edge_count() const { return adjacency_.size() / 2; }

    uint32_t degree(uint32_t v) const {
        return static_cast<uint32_t>(offsets_[v + 1] - offsets_[v]);
    }
    std::span<const uint32_t> neighbors(uint32_t v) const {
        return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
    }

    int32_t level(uint32_t v) const { return levels_[v]; }
    const std::vector<int32_t>& levels() const { return levels_; }
    bool levels_known() const { return !levels_.empty() && levels_[0] != kLevelUnknown; }
    int32_t max_level() const;

    uint32_t hub() const { return hub_; }
    const std::optional<ModelParams>& params() const { return params_; }

    // Visits each undirected edge once, with u < v.
    template <class F>
    void for_each_edge(F&& f) const {
        for (uint32_t u = 0; u < n(); ++u)
            for (uint32_t v : neighbors(u))
                if (v > u) f(u, v);
    }

    bool has_edge(uint32_t u, uint32_t v) const {
        auto nb = neighbors(u);
        return std::binary_search(nb.begin(), nb.end(), v);
    }

private:
    std::vector<uint64_t> offsets_;
    std::vector<uint32_t> adjacency_;
    std::vector<int32_t> levels_;
    uint32_t hub_ = 0;
    std::optional<ModelParams> params_;
};

inline int32_t GraphInstance::max_level() const {
    int32_t mx = kLevelUnknown;
    for (int32_t l : levels_)
        if (l > mx) mx = l;
    return mx;
}

// Structural equality: same vertex set, adjacency and (when both sides
// know them) levels.
inline bool graph_equal(const GraphInstance& a, const GraphInstance& b) {
    if (a.n() != b.n() || a.edge_count() != b.edge_count()) return false;
    for (uint32_t v = 0; v < a.n(); ++v) {
        auto na = a.neighbors(v);
        auto nb = b.neighbors(v);
        if (!std::equal(na.begin(), na.end(), nb.begin(), nb.end())) return false;
    }
    if (a.levels_known() && b.levels_known())
        for (uint32_t v = 0; v < a.n(); ++v)
            if (a.level(v) != b.level(v)) return false;
    return true;
}

}  // namespace hsfnet
