#pragma once

#include "hsfnet/graph.hpp"
#include "hsfnet/params.hpp"

namespace hsfnet {

struct BuildOptions {
    // Builders refuse instances with more vertices than this.
    uint64_t size_cap = 10'000'000;
};

// G(t;m): star seed, each step connects a fresh active vertex to every
// bottom-level vertex of m copies of the previous graph. Vertex ids are
// level-major (level 0 first, contiguous within a level), so the hub is
// always vertex 0.
GraphInstance build_base(int m, int t, const BuildOptions& opts = {});

// Same growth rule from a wheel seed: the bottom level additionally
// carries a rim cycle inside each seed block (a single rim edge per
// block when m = 2, keeping the graph simple).
GraphInstance build_wheel(int m, int t, const BuildOptions& opts = {});

// Wheel variant with each rim edge deleted independently with
// probability p. One draw per rim edge in deterministic edge order from
// a mersenne-twister stream, so identical (m,t,p,seed) rebuilds the
// identical graph on any platform.
GraphInstance build_deleted(int m, int t, double p, uint64_t seed,
                            const BuildOptions& opts = {});

GraphInstance build(const ModelParams& params, const BuildOptions& opts = {});

}  // namespace hsfnet
