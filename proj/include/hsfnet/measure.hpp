#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hsfnet/graph.hpp"
#include "hsfnet/rational.hpp"

namespace hsfnet::measure {

struct DegreeHistogram {
    std::map<uint64_t, uint64_t> counts;  // degree -> vertex count
    // Exact cumulative distribution P(k >= k_i), one point per distinct
    // degree, ascending in degree.
    std::vector<std::pair<uint64_t, Rational>> cumulative;
};
DegreeHistogram degree_histogram(const GraphInstance& g);

struct DiameterOptions {
    // When set, lower-bounds the diameter from this many random sources
    // instead of an exact sweep.
    std::optional<uint32_t> sampled_sources;
    uint64_t sample_seed = 1;
    // Exact sweeps above this vertex count fall back to sampling.
    uint64_t exact_cap = 200'000;
    // Disable the eccentricity-bound early exit (full |V| sweeps).
    bool exhaustive = false;
};
struct DiameterResult {
    int diameter = 0;
    bool exact = true;  // false: lower bound only
    uint64_t bfs_runs = 0;
    std::string note;
};
// Exact mode runs per-source breadth-first searches, pruned by the
// sound bounds max ecc <= D <= 2 min ecc; the returned value is the
// true diameter whenever `exact` is set. Throws on disconnected input.
DiameterResult diameter_bfs(const GraphInstance& g, const DiameterOptions& opts = {});

struct ClusteringResult {
    double average = 0.0;  // mean of c_v over all vertices (k<2 counts 0)
    uint64_t triangles = 0;
    // level -> mean c_v over that level, when levels are known.
    std::map<int32_t, double> per_level;
};
ClusteringResult average_local_clustering(const GraphInstance& g);

uint64_t triangle_count(const GraphInstance& g);

struct DegenerateDegrees : std::runtime_error {
    DegenerateDegrees() : std::runtime_error("assortativity undefined (degree-regular edge set)") {}
};
// Degree-degree Pearson correlation over the edge list, exact. Throws
// DegenerateDegrees when every edge endpoint has the same degree.
Rational assortativity_pearson_exact(const GraphInstance& g);
double assortativity_pearson(const GraphInstance& g);

// Least-squares slope of log cumulative mass vs log degree over the
// active-vertex degree classes m^(t+1-L); the bottom class (degree t+1)
// is excluded from the fit entirely, matching the two-branch asymptotic
// form. Needs known levels and at least 4 classes (t >= 3).
double powerlaw_slope(const GraphInstance& g);

bool is_connected(const GraphInstance& g);

struct MeasuredReport {
    DegreeHistogram histogram;
    DiameterResult diameter;
    ClusteringResult clustering;
    std::optional<double> assortativity;          // absent when degenerate
    std::optional<std::string> assortativity_exact;
    std::optional<double> slope;                  // absent below t=3 or without levels
    bool connected = true;
    std::vector<std::string> notes;
};
struct MeasureOptions {
    DiameterOptions diameter;
    bool want_slope = true;
};
MeasuredReport measure_all(const GraphInstance& g, const MeasureOptions& opts = {});

std::string measured_csv_header();
std::string measured_csv_row(const GraphInstance& g, const MeasuredReport& r);

}  // namespace hsfnet::measure
