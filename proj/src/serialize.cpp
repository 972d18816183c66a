#include "hsfnet/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

#include <json.hpp>

#include "hsfnet/rational.hpp"

namespace hsfnet {
namespace {

using nlohmann::json;

json params_to_json(const ModelParams& p) {
    json j;
    j["variant"] = variant_name(p.variant);
    j["m"] = p.m;
    j["t"] = p.t;
    if (p.p) j["p"] = *p.p;
    if (p.seed) j["seed"] = *p.seed;
    return j;
}

void write_edge_list(const GraphInstance& g, std::ostream& out) {
    g.for_each_edge([&](uint32_t u, uint32_t v) { out << u << ' ' << v << '\n'; });
}

void write_dot(const GraphInstance& g, std::ostream& out) {
    out << "graph hsfnet {\n";
    if (g.params()) {
        const ModelParams& p = *g.params();
        out << "  graph [variant=\"" << variant_name(p.variant) << "\", m=" << p.m
            << ", t=" << p.t;
        if (p.p) out << ", p=" << *p.p;
        if (p.seed) out << ", seed=" << *p.seed;
        out << "];\n";
    }
    for (uint32_t v = 0; v < g.n(); ++v) {
        out << "  " << v;
        if (g.levels_known()) out << " [level=" << g.level(v) << "]";
        out << ";\n";
    }
    g.for_each_edge([&](uint32_t u, uint32_t v) { out << "  " << u << " -- " << v << ";\n"; });
    out << "}\n";
}

void write_json(const GraphInstance& g, std::ostream& out) {
    json j;
    if (g.params()) {
        j.update(params_to_json(*g.params()));
        // m=2 wheels carry one rim edge per seed block instead of a cycle.
        if (g.params()->variant != Variant::Base && g.params()->m == 2)
            j["degenerate_rim"] = true;
    }
    j["n"] = g.n();
    if (g.levels_known())
        j["levels"] = g.levels();
    else
        j["levels"] = json::array();
    json edges = json::array();
    g.for_each_edge([&](uint32_t u, uint32_t v) { edges.push_back({u, v}); });
    j["edges"] = std::move(edges);
    out << j.dump() << '\n';
}

struct RawEdges {
    uint32_t n = 0;
    std::vector<std::pair<uint32_t, uint32_t>> edges;
};

GraphInstance from_raw(const RawEdges& raw, std::vector<int32_t> levels, uint32_t hub,
                       std::optional<ModelParams> params) {
    std::vector<uint64_t> offsets(raw.n + 1, 0);
    for (auto [u, v] : raw.edges) {
        ++offsets[u + 1];
        ++offsets[v + 1];
    }
    for (uint32_t v = 0; v < raw.n; ++v) offsets[v + 1] += offsets[v];
    std::vector<uint32_t> adjacency(offsets[raw.n]);
    std::vector<uint64_t> cursor(offsets.begin(), offsets.end() - 1);
    for (auto [u, v] : raw.edges) {
        adjacency[cursor[u]++] = v;
        adjacency[cursor[v]++] = u;
    }
    for (uint32_t v = 0; v < raw.n; ++v) {
        auto first = adjacency.begin() + static_cast<int64_t>(offsets[v]);
        auto last = adjacency.begin() + static_cast<int64_t>(offsets[v + 1]);
        std::sort(first, last);
        if (std::adjacent_find(first, last) != last)
            throw ParseError("duplicate edge at vertex " + std::to_string(v));
    }
    if (levels.empty()) levels.assign(raw.n, kLevelUnknown);
    return GraphInstance(std::move(offsets), std::move(adjacency), std::move(levels), hub,
                         std::move(params));
}

RawEdges parse_edge_lines(std::istream& in) {
    RawEdges raw;
    std::string line;
    uint64_t line_no = 0;
    bool any = false;
    uint64_t max_id = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        long long u, v;
        if (!(ls >> u >> v))
            throw ParseError("line " + std::to_string(line_no) + ": expected 'u v'");
        std::string trailing;
        if (ls >> trailing)
            throw ParseError("line " + std::to_string(line_no) + ": trailing tokens");
        if (u < 0 || v < 0)
            throw ParseError("line " + std::to_string(line_no) + ": negative vertex id");
        if (u == v)
            throw ParseError("line " + std::to_string(line_no) + ": self-loop " +
                             std::to_string(u));
        any = true;
        max_id = std::max<uint64_t>(max_id, std::max<uint64_t>(u, v));
        raw.edges.emplace_back(static_cast<uint32_t>(std::min(u, v)),
                               static_cast<uint32_t>(std::max(u, v)));
    }
    if (!any) throw ParseError("empty edge list");
    raw.n = static_cast<uint32_t>(max_id + 1);
    return raw;
}

// Distances from the hub, or empty if the graph is disconnected.
std::vector<int> bfs_dist(const GraphInstance& g, uint32_t src) {
    std::vector<int> dist(g.n(), -1);
    std::queue<uint32_t> q;
    dist[src] = 0;
    q.push(src);
    uint32_t seen = 1;
    while (!q.empty()) {
        uint32_t u = q.front();
        q.pop();
        for (uint32_t w : g.neighbors(u))
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                q.push(w);
                ++seen;
            }
    }
    if (seen != g.n()) dist.clear();
    return dist;
}

// Level recovery for family-shaped inputs: the hub is the (unique)
// maximum-degree vertex, distance-1 vertices form the bottom level and
// distance-2 vertices are classified by their degree m^(t+1-L).
bool recover_levels(const GraphInstance& g, const std::optional<ModelParams>& params,
                    std::vector<int32_t>& levels, std::optional<ModelParams>& inferred,
                    std::vector<std::string>& warnings) {
    uint32_t hub = 0;
    for (uint32_t v = 1; v < g.n(); ++v)
        if (g.degree(v) > g.degree(hub)) hub = v;

    std::vector<int> dist = bfs_dist(g, hub);
    if (dist.empty()) return false;

    int m, t;
    if (params) {
        m = params->m;
        t = params->t;
    } else {
        // Base-shape inference: bottoms sit at distance 1 and share
        // degree t+1; the hub degree fixes m via m^(t+1).
        int bottom_deg = -1;
        for (uint32_t v = 0; v < g.n(); ++v) {
            if (dist[v] != 1) continue;
            if (bottom_deg < 0) bottom_deg = static_cast<int>(g.degree(v));
            if (static_cast<int>(g.degree(v)) != bottom_deg) return false;
        }
        if (bottom_deg < 1) return false;
        t = bottom_deg - 1;
        double root = std::pow(static_cast<double>(g.degree(hub)), 1.0 / (t + 1));
        m = static_cast<int>(std::llround(root));
        if (m < 2) return false;
    }

    BigInt expect_n = (mpow(m, t + 2) - 1) / (m - 1);
    if (expect_n != g.n()) return false;

    std::vector<BigInt> level_count(t + 2, 0);
    levels.assign(g.n(), kLevelUnknown);
    for (uint32_t v = 0; v < g.n(); ++v) {
        if (v == hub) {
            levels[v] = 0;
        } else if (dist[v] == 1) {
            levels[v] = t + 1;
        } else if (dist[v] == 2) {
            // Active vertex: degree m^(t+1-L) for some L in [1,t].
            BigInt d = g.degree(v);
            BigInt pw = mpow(m, t + 1);
            int level = 0;
            while (level <= t && pw != d) {
                pw /= m;
                ++level;
            }
            if (level == 0 || level > t) return false;
            levels[v] = level;
        } else {
            return false;
        }
        ++level_count[levels[v]];
    }
    if (level_count[0] != 1) return false;
    for (int l = 1; l <= t; ++l)
        if (level_count[l] != mpow(m, l)) return false;
    if (level_count[t + 1] != mpow(m, t + 1)) return false;

    if (!params) inferred = ModelParams::base(m, t);
    (void)warnings;
    return true;
}

ImportResult import_raw(const RawEdges& raw, std::optional<ModelParams> params,
                        std::vector<int32_t> json_levels) {
    ImportResult result;
    GraphInstance g = from_raw(raw, std::move(json_levels), 0, params);
    std::vector<std::string> warnings;

    if (bfs_dist(g, 0).empty()) warnings.push_back("input graph is disconnected");

    if (!g.levels_known()) {
        std::vector<int32_t> levels;
        std::optional<ModelParams> inferred;
        if (recover_levels(g, params, levels, inferred, warnings)) {
            if (!params) params = inferred;
            uint32_t hub = 0;
            for (uint32_t v = 0; v < g.n(); ++v)
                if (levels[v] == 0) hub = v;
            g = from_raw(raw, std::move(levels), hub, params);
        } else {
            warnings.push_back("could not recover level map; levels left unknown");
        }
    } else {
        uint32_t hub = 0;
        for (uint32_t v = 0; v < g.n(); ++v)
            if (g.level(v) == 0) hub = v;
        g = from_raw(raw, g.levels(), hub, params);
    }

    result.graph = std::move(g);
    result.warnings = std::move(warnings);
    return result;
}

ImportResult import_json(std::istream& in, std::optional<ModelParams> params) {
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("bad json: ") + e.what());
    }
    if (!params && j.contains("variant")) {
        ModelParams p;
        auto v = variant_from_name(j.at("variant").get<std::string>());
        if (!v) throw ParseError("unknown variant in json");
        p.variant = *v;
        p.m = j.at("m").get<int>();
        p.t = j.at("t").get<int>();
        if (j.contains("p")) p.p = j.at("p").get<double>();
        if (j.contains("seed")) p.seed = j.at("seed").get<uint64_t>();
        validate(p);
        params = p;
    }
    RawEdges raw;
    raw.n = j.at("n").get<uint32_t>();
    if (raw.n == 0) throw ParseError("empty graph");
    for (const auto& e : j.at("edges")) {
        uint32_t u = e.at(0).get<uint32_t>();
        uint32_t v = e.at(1).get<uint32_t>();
        if (u == v) throw ParseError("self-loop in json edges");
        if (u >= raw.n || v >= raw.n) throw ParseError("edge endpoint out of range");
        raw.edges.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::vector<int32_t> levels;
    if (j.contains("levels") && !j.at("levels").empty()) {
        levels = j.at("levels").get<std::vector<int32_t>>();
        if (levels.size() != raw.n) throw ParseError("levels length != n");
    }
    return import_raw(raw, std::move(params), std::move(levels));
}

}  // namespace

void export_edges(const GraphInstance& g, ExportFormat format, std::ostream& out) {
    switch (format) {
        case ExportFormat::EdgeList: write_edge_list(g, out); break;
        case ExportFormat::Dot: write_dot(g, out); break;
        case ExportFormat::Json: write_json(g, out); break;
    }
    if (!out) throw std::runtime_error("write failure while exporting graph");
}

std::string export_edges_string(const GraphInstance& g, ExportFormat format) {
    std::ostringstream out;
    export_edges(g, format, out);
    return out.str();
}

ImportResult import_edges(std::istream& in, const std::optional<ModelParams>& params) {
    if (params) validate(*params);
    // Sniff: json starts with '{'.
    int c = in.peek();
    while (c == ' ' || c == '\n' || c == '\r' || c == '\t') {
        in.get();
        c = in.peek();
    }
    if (c == std::char_traits<char>::eof()) throw ParseError("empty input");
    if (c == '{') return import_json(in, params);
    return import_raw(parse_edge_lines(in), params, {});
}

ImportResult import_edges_string(const std::string& text,
                                 const std::optional<ModelParams>& params) {
    std::istringstream in(text);
    return import_edges(in, params);
}

}  // namespace hsfnet
