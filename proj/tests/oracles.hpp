// Independent reference implementations used only by the tests: the
// literal copy-based construction and brute-force measurements. These
// deliberately avoid the library's one-pass builder and pruned sweeps.
#pragma once

#include <map>
#include <queue>
#include <set>
#include <vector>

#include "hsfnet/graph.hpp"

namespace oracle {

struct RefGraph {
    std::vector<std::set<int>> adj;
    std::vector<int> level;

    int n() const { return static_cast<int>(adj.size()); }
    int edge_count() const {
        int e = 0;
        for (const auto& nb : adj) e += static_cast<int>(nb.size());
        return e / 2;
    }
    void connect(int u, int v) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
};

inline RefGraph ref_seed_star(int m) {
    RefGraph g;
    g.adj.assign(m + 1, {});
    g.level.assign(m + 1, 1);
    g.level[0] = 0;
    for (int leaf = 1; leaf <= m; ++leaf) g.connect(0, leaf);
    return g;
}

inline RefGraph ref_seed_wheel(int m) {
    RefGraph g = ref_seed_star(m);
    if (m == 2) {
        g.connect(1, 2);
    } else {
        for (int j = 0; j < m; ++j) g.connect(1 + j, 1 + (j + 1) % m);
    }
    return g;
}

// Literal growth rule: m duplications of the previous graph, one fresh
// active vertex wired to every re-indexed bottom-level vertex.
inline RefGraph ref_grow(RefGraph seed, int m, int t) {
    RefGraph g = std::move(seed);
    for (int step = 1; step <= t; ++step) {
        const int n_old = g.n();
        RefGraph next;
        next.adj.assign(m * n_old + 1, {});
        next.level.assign(m * n_old + 1, 0);
        const int active = m * n_old;
        for (int copy = 0; copy < m; ++copy) {
            const int offset = copy * n_old;
            for (int v = 0; v < n_old; ++v) {
                next.level[offset + v] = g.level[v] + 1;
                for (int u : g.adj[v])
                    if (u > v) next.connect(offset + v, offset + u);
            }
        }
        const int bottom = step + 1;
        for (int v = 0; v < m * n_old; ++v)
            if (next.level[v] == bottom) next.connect(active, v);
        g = std::move(next);
    }
    return g;
}

inline RefGraph ref_base(int m, int t) { return ref_grow(ref_seed_star(m), m, t); }
inline RefGraph ref_wheel(int m, int t) { return ref_grow(ref_seed_wheel(m), m, t); }

// level -> sorted degree list, an isomorphism-invariant profile.
inline std::map<int, std::vector<int>> level_degree_profile(const RefGraph& g) {
    std::map<int, std::vector<int>> profile;
    for (int v = 0; v < g.n(); ++v)
        profile[g.level[v]].push_back(static_cast<int>(g.adj[v].size()));
    for (auto& [level, degrees] : profile) std::sort(degrees.begin(), degrees.end());
    return profile;
}

inline std::map<int, std::vector<int>> level_degree_profile(const hsfnet::GraphInstance& g) {
    std::map<int, std::vector<int>> profile;
    for (uint32_t v = 0; v < g.n(); ++v)
        profile[g.level(v)].push_back(static_cast<int>(g.degree(v)));
    for (auto& [level, degrees] : profile) std::sort(degrees.begin(), degrees.end());
    return profile;
}

inline long long brute_triangles(const hsfnet::GraphInstance& g) {
    long long count = 0;
    g.for_each_edge([&](uint32_t u, uint32_t v) {
        for (uint32_t w : g.neighbors(u))
            if (w != v && g.has_edge(v, w)) ++count;
    });
    return count / 3;  // each triangle counted once per edge
}

// Plain all-pairs BFS diameter with no pruning.
inline int brute_diameter(const hsfnet::GraphInstance& g) {
    int best = 0;
    for (uint32_t src = 0; src < g.n(); ++src) {
        std::vector<int> dist(g.n(), -1);
        std::queue<uint32_t> q;
        dist[src] = 0;
        q.push(src);
        while (!q.empty()) {
            uint32_t u = q.front();
            q.pop();
            best = std::max(best, dist[u]);
            for (uint32_t w : g.neighbors(u))
                if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
        }
    }
    return best;
}

}  // namespace oracle
