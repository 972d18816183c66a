#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hsfnet/analytic.hpp"
#include "hsfnet/graph.hpp"
#include "hsfnet/rational.hpp"

namespace hsfnet::walk {

// Absorbing random walk with the trap on one vertex (default: the hub).
struct TrapSpec {
    const GraphInstance& graph;
    uint32_t trap;

    explicit TrapSpec(const GraphInstance& g) : graph(g), trap(g.hub()) {}
    TrapSpec(const GraphInstance& g, uint32_t trap_vertex) : graph(g), trap(trap_vertex) {}
};

enum class Method { LinearSolve, ClosedForm, MonteCarlo };

struct HittingSummary {
    Method method = Method::LinearSolve;
    double mean = 0.0;                     // over non-trap start vertices
    std::optional<Rational> mean_exact;    // rational solve / closed form
    std::map<int32_t, double> per_level;   // start level -> mean hitting time
    std::vector<double> per_vertex;        // solves only; indexed by vertex, trap = 0

    uint64_t trials = 0;                   // Monte Carlo only
    double std_error = 0.0;
    uint64_t truncated = 0;
    uint64_t max_steps = 0;
    bool truncation_flagged = false;

    uint64_t sweeps = 0;                   // iterative solve only
};

struct SolveOptions {
    uint32_t dense_cap = 2000;     // dense elimination up to this many vertices
    double tolerance = 1e-12;      // iterative residual target
    uint64_t max_sweeps = 1'000'000;
    bool rational = false;         // exact elimination (small instances)
    uint32_t rational_cap = 400;
};

// First-step system h_v = 1 + sum_{u in N(v), u != trap} h_u / d_v with
// h_trap = 0. Dense partial-pivot elimination below dense_cap, Gauss-
// Seidel sweeps to the residual target above it.
HittingSummary exact_hitting_solve(const TrapSpec& spec, const SolveOptions& opts = {});

// Level-collapsed solve for level-symmetric instances (base and wheel
// families): one unknown per level, exact rational solution. Throws if
// per-level neighbor profiles are not uniform or the trap is not the hub.
struct CollapsedHitting {
    std::vector<Rational> per_level;  // index L-1 holds level L, L = 1..max
    Rational mean;
};
CollapsedHitting collapsed_hitting_solve(const TrapSpec& spec);

struct HittingDistribution {
    std::optional<uint32_t> source;  // absent: uniform over non-trap starts
    uint64_t horizon = 0;
    std::vector<double> prob;        // prob[l-1] = P(H = l)
    double tail = 0.0;               // 1 - sum of prob
    double truncated_mean = 0.0;     // sum l P(H = l)
};
// Propagates the trap-removed transition operator for `horizon` steps.
HittingDistribution hitting_distribution(const TrapSpec& spec,
                                         std::optional<uint32_t> source,
                                         uint64_t horizon);

// Closed generating function of the bottom-level first-hit probabilities:
// P(x) = x / ((t+1) - t x^2). Its value at 1 is 1, its derivative at 1 the
// bottom hitting time 2t+1, and its series coefficients the per-step
// first-hit probabilities.
struct GeneratingFunctionMoments {
    int t = 0;
    Rational at_one;
    Rational derivative_at_one;

    double eval(double x) const;
    Rational series_coefficient(uint64_t l) const;
};
GeneratingFunctionMoments generating_function_moments(int m, int t);

// Population-weighted closed-form mean hitting time of the base family.
inline ExactScalar mean_hitting_closed(int m, int t) {
    return analytic::hitting_closed_forms(m, t).mean;
}

struct WalkOptions {
    uint64_t trials = 100'000;
    uint64_t seed = 1;
    uint64_t max_steps = 0;          // 0: 100*(2t+2) when levels known
    std::optional<uint32_t> source;  // fixed start; absent: uniform non-trap
};
// Uniform-neighbor random walks, one independent RNG stream per trial.
HittingSummary simulate_walks(const TrapSpec& spec, const WalkOptions& opts = {});

}  // namespace hsfnet::walk
