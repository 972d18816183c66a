#include "hsfnet/measure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace hsfnet::measure {
namespace {

// Single-source BFS returning the eccentricity, reusing scratch buffers.
int bfs_ecc(const GraphInstance& g, uint32_t src, std::vector<int>& dist,
            std::vector<uint32_t>& queue) {
    std::fill(dist.begin(), dist.end(), -1);
    queue.clear();
    queue.push_back(src);
    dist[src] = 0;
    int ecc = 0;
    for (size_t head = 0; head < queue.size(); ++head) {
        uint32_t u = queue[head];
        int du = dist[u];
        ecc = du;
        for (uint32_t w : g.neighbors(u))
            if (dist[w] < 0) {
                dist[w] = du + 1;
                queue.push_back(w);
            }
    }
    if (queue.size() != g.n()) throw std::runtime_error("graph is disconnected");
    return ecc;
}

uint64_t bounded_draw(std::mt19937_64& rng, uint64_t n) {
    uint64_t threshold = (0 - n) % n;
    for (;;) {
        uint64_t r = rng();
        if (r >= threshold) return r % n;
    }
}

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace

DegreeHistogram degree_histogram(const GraphInstance& g) {
    DegreeHistogram h;
    for (uint32_t v = 0; v < g.n(); ++v) ++h.counts[g.degree(v)];
    BigInt suffix = 0;
    std::vector<std::pair<uint64_t, BigInt>> rev;
    for (auto it = h.counts.rbegin(); it != h.counts.rend(); ++it) {
        suffix += it->second;
        rev.emplace_back(it->first, suffix);
    }
    for (auto it = rev.rbegin(); it != rev.rend(); ++it)
        h.cumulative.emplace_back(it->first, Rational(it->second, g.n()));
    return h;
}

DiameterResult diameter_bfs(const GraphInstance& g, const DiameterOptions& opts) {
    if (g.n() == 0) throw std::invalid_argument("empty graph");
    DiameterResult result;
    std::vector<int> dist(g.n());
    std::vector<uint32_t> queue;
    queue.reserve(g.n());

    std::optional<uint32_t> sampled = opts.sampled_sources;
    if (sampled && *sampled == 0)
        throw std::invalid_argument("sampled diameter needs at least one source");
    if (!sampled && g.n() > opts.exact_cap) {
        sampled = 64;
        result.note = "graph above exact cap; diameter is a sampled lower bound";
    }

    if (sampled) {
        std::mt19937_64 rng(opts.sample_seed);
        int best = 0;
        for (uint32_t i = 0; i < *sampled; ++i) {
            uint32_t src = static_cast<uint32_t>(bounded_draw(rng, g.n()));
            best = std::max(best, bfs_ecc(g, src, dist, queue));
            ++result.bfs_runs;
        }
        result.diameter = best;
        result.exact = false;
        return result;
    }

    // max ecc seen is a lower bound, 2 min ecc an upper bound; the sweep
    // stops as soon as they meet, which keeps the result exact.
    int lower = 0;
    int upper = std::numeric_limits<int>::max();
    for (uint32_t src = 0; src < g.n(); ++src) {
        int ecc = bfs_ecc(g, src, dist, queue);
        ++result.bfs_runs;
        lower = std::max(lower, ecc);
        upper = std::min(upper, 2 * ecc);
        if (!opts.exhaustive && lower >= upper) break;
    }
    result.diameter = lower;
    result.exact = true;
    return result;
}

ClusteringResult average_local_clustering(const GraphInstance& g) {
    ClusteringResult result;
    const uint32_t n = g.n();
    std::vector<uint32_t> mark(n, UINT32_MAX);
    double sum = 0.0;
    uint64_t wedges_closed_total = 0;  // sum of n_v, = 3 * triangle count
    std::map<int32_t, std::pair<double, uint64_t>> per_level;  // sum, count

    for (uint32_t v = 0; v < n; ++v) {
        const auto nb = g.neighbors(v);
        double cv = 0.0;
        if (nb.size() >= 2) {
            for (uint32_t u : nb) mark[u] = v;
            uint64_t closed = 0;
            for (uint32_t u : nb)
                for (uint32_t w : g.neighbors(u))
                    if (mark[w] == v) ++closed;
            uint64_t nv = closed / 2;  // each neighbor edge counted twice
            wedges_closed_total += nv;
            const double k = static_cast<double>(nb.size());
            cv = static_cast<double>(nv) / (k * (k - 1) / 2.0);
        }
        sum += cv;
        if (g.levels_known()) {
            auto& slot = per_level[g.level(v)];
            slot.first += cv;
            slot.second += 1;
        }
    }
    result.average = sum / static_cast<double>(n);
    result.triangles = wedges_closed_total / 3;
    for (auto& [level, slot] : per_level)
        result.per_level[level] = slot.first / static_cast<double>(slot.second);
    return result;
}

uint64_t triangle_count(const GraphInstance& g) {
    return average_local_clustering(g).triangles;
}

Rational assortativity_pearson_exact(const GraphInstance& g) {
    BigInt s_prod = 0, s_sum = 0, s_square = 0;
    g.for_each_edge([&](uint32_t u, uint32_t v) {
        BigInt ku = g.degree(u), kv = g.degree(v);
        s_prod += ku * kv;
        s_sum += ku + kv;
        s_square += ku * ku + kv * kv;
    });
    BigInt e = g.edge_count();
    if (e == 0) throw DegenerateDegrees();
    // r = (S1/E - (S2/2E)^2) / (S3/2E - (S2/2E)^2), cleared of denominators.
    BigInt num = 4 * e * s_prod - s_sum * s_sum;
    BigInt den = 2 * e * s_square - s_sum * s_sum;
    if (den == 0) throw DegenerateDegrees();
    return Rational(num, den);
}

double assortativity_pearson(const GraphInstance& g) {
    return assortativity_pearson_exact(g).convert_to<double>();
}

double powerlaw_slope(const GraphInstance& g) {
    if (!g.levels_known())
        throw std::runtime_error("power-law fit needs a level map");
    const int32_t bottom = g.max_level();
    const int t = bottom - 1;
    if (t < 3) throw std::runtime_error("too few degree classes for a power-law fit (need t >= 3)");

    // Class degree and population per active level.
    std::vector<uint64_t> degree_of(t + 1, 0), count_of(t + 1, 0);
    for (uint32_t v = 0; v < g.n(); ++v) {
        int32_t level = g.level(v);
        if (level < 0 || level > t) continue;
        if (count_of[level] == 0) degree_of[level] = g.degree(v);
        else if (degree_of[level] != g.degree(v))
            throw std::runtime_error("degree classes are not uniform per level");
        ++count_of[level];
    }

    // Cumulative mass from the hub side; level L holds every class with
    // degree >= degree_of[L] since degrees decrease with the level.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    uint64_t cum = 0;
    for (int level = 0; level <= t; ++level) {
        cum += count_of[level];
        double x = std::log(static_cast<double>(degree_of[level]));
        double y = std::log(static_cast<double>(cum) / static_cast<double>(g.n()));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double points = t + 1;
    return (points * sxy - sx * sy) / (points * sxx - sx * sx);
}

bool is_connected(const GraphInstance& g) {
    if (g.n() == 0) return true;
    std::vector<int> dist(g.n());
    std::vector<uint32_t> queue;
    try {
        bfs_ecc(g, 0, dist, queue);
    } catch (const std::runtime_error&) {
        return false;
    }
    return true;
}

MeasuredReport measure_all(const GraphInstance& g, const MeasureOptions& opts) {
    MeasuredReport r;
    r.histogram = degree_histogram(g);
    r.connected = is_connected(g);
    if (r.connected) {
        r.diameter = diameter_bfs(g, opts.diameter);
        if (!r.diameter.note.empty()) r.notes.push_back(r.diameter.note);
    } else {
        r.diameter.exact = false;
        r.notes.push_back("disconnected graph: diameter skipped");
    }
    r.clustering = average_local_clustering(g);
    try {
        Rational exact = assortativity_pearson_exact(g);
        r.assortativity = exact.convert_to<double>();
        r.assortativity_exact = ExactScalar(exact).str();
    } catch (const DegenerateDegrees& e) {
        r.notes.push_back(e.what());
    }
    if (opts.want_slope) {
        try {
            r.slope = powerlaw_slope(g);
        } catch (const std::runtime_error& e) {
            r.notes.push_back(std::string("slope: ") + e.what());
        }
    }
    return r;
}

std::string measured_csv_header() {
    return "variant,m,t,p,seed,n,edges,diameter,diameter_exact,clustering,"
           "assortativity,triangles,connected,slope";
}

std::string measured_csv_row(const GraphInstance& g, const MeasuredReport& r) {
    std::ostringstream out;
    if (g.params()) {
        const ModelParams& p = *g.params();
        out << variant_name(p.variant) << ',' << p.m << ',' << p.t << ',';
        if (p.p) out << fmt_double(*p.p);
        out << ',';
        if (p.seed) out << *p.seed;
    } else {
        out << ",,,,";
    }
    out << ',' << g.n() << ',' << g.edge_count() << ',' << r.diameter.diameter << ','
        << (r.diameter.exact ? 1 : 0) << ',' << fmt_double(r.clustering.average) << ',';
    if (r.assortativity) out << fmt_double(*r.assortativity);
    out << ',' << r.clustering.triangles << ',' << (r.connected ? 1 : 0) << ',';
    if (r.slope) out << fmt_double(*r.slope);
    return out.str();
}

}  // namespace hsfnet::measure
