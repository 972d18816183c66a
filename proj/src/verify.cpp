#include "hsfnet/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <stdexcept>

#include "hsfnet/analytic.hpp"
#include "hsfnet/build.hpp"
#include "hsfnet/measure.hpp"
#include "hsfnet/sweep.hpp"
#include "hsfnet/walk.hpp"

namespace hsfnet::verify {
namespace {

using nlohmann::json;

constexpr uint64_t kPinnedSeed = 20260809;  // statistical criteria are seed-pinned

struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& msg) {
    if (!cond) throw CheckFailure(msg);
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

class Runner {
public:
    Runner(Level level, std::ostream* progress) : level_(level), progress_(progress) {}

    Level level() const { return level_; }
    bool full() const { return level_ == Level::Full; }

    void criterion(int id, const std::string& name,
                   const std::function<void(std::string&)>& fn) {
        CriterionResult result;
        result.id = id;
        result.name = name;
        auto start = std::chrono::steady_clock::now();
        try {
            fn(result.detail);
            result.passed = true;
        } catch (const CheckFailure& e) {
            result.passed = false;
            result.detail = e.what();
        } catch (const std::exception& e) {
            result.passed = false;
            result.detail = std::string("error: ") + e.what();
        }
        result.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (progress_) {
            char line[512];
            std::snprintf(line, sizeof line, "[%2d/12] %s  %s (%.2fs)%s%s", id,
                          result.passed ? "PASS" : "FAIL", name.c_str(), result.seconds,
                          result.detail.empty() ? "" : " -- ", result.detail.c_str());
            (*progress_) << line << std::endl;
        }
        report.criteria.push_back(std::move(result));
    }

    Report report;

private:
    Level level_;
    std::ostream* progress_;
};

struct SampleStats {
    double mean = 0, std_error = 0;
    uint64_t count = 0;
};

SampleStats stats_of(const std::vector<double>& xs) {
    SampleStats s;
    s.count = xs.size();
    if (xs.empty()) return s;
    double sum = 0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.std_error = std::sqrt(ss / static_cast<double>(xs.size() - 1) /
                                static_cast<double>(xs.size()));
    }
    return s;
}

json ci_entry(double formula, const SampleStats& s) {
    return {{"formula", formula},
            {"sample_mean", s.mean},
            {"stderr", s.std_error},
            {"samples", s.count},
            {"ci95", {s.mean - 1.96 * s.std_error, s.mean + 1.96 * s.std_error}},
            {"formula_within_ci",
             formula >= s.mean - 1.96 * s.std_error && formula <= s.mean + 1.96 * s.std_error}};
}

// ---- criteria ------------------------------------------------------------

void counts_criterion(std::string& detail) {
    auto start = std::chrono::steady_clock::now();
    int cells = 0;
    for (int m = 2; m <= 5; ++m)
        for (int t = 0; t <= 8; ++t) {
            auto [v, e] = analytic::counts(m, t);
            if (v.value > 1'000'000) continue;
            GraphInstance g = build_base(m, t);
            require(BigInt(g.n()) == numerator(v.value),
                    "vertex count mismatch at m=" + std::to_string(m) +
                        " t=" + std::to_string(t));
            require(BigInt(g.edge_count()) == numerator(e.value),
                    "edge count mismatch at m=" + std::to_string(m) +
                        " t=" + std::to_string(t));
            ++cells;
        }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    require(secs < 10.0, "count grid took " + fmt(secs) + "s, budget 10s");
    detail = std::to_string(cells) + " cells in " + fmt(secs) + "s";
}

void degree_table_criterion(std::string& detail) {
    int cells = 0;
    for (int m = 2; m <= 5; ++m)
        for (int t = 0; t <= 8; ++t) {
            auto [v, e] = analytic::counts(m, t);
            if (v.value > 1'000'000) continue;
            GraphInstance g = build_base(m, t);
            // Classes with coinciding degrees merge in a histogram.
            std::map<uint64_t, uint64_t> expected;
            for (const auto& row : analytic::degree_table(m, t))
                expected[row.degree.convert_to<uint64_t>()] +=
                    row.count.convert_to<uint64_t>();
            require(measure::degree_histogram(g).counts == expected,
                    "degree histogram mismatch at m=" + std::to_string(m) +
                        " t=" + std::to_string(t));
            ++cells;
        }
    detail = std::to_string(cells) + " cells";
}

void diameter_criterion(std::string& detail) {
    int graphs = 0;
    auto check_diameter = [&](const GraphInstance& g, int expected, const std::string& what) {
        auto result = measure::diameter_bfs(g);
        require(result.exact, "diameter not exact for " + what);
        require(result.diameter == expected,
                what + ": diameter " + std::to_string(result.diameter) + " != " +
                    std::to_string(expected));
        ++graphs;
    };
    for (int m = 2; m <= 4; ++m)
        check_diameter(build_base(m, 0), 2, "base m=" + std::to_string(m) + " t=0");
    for (int m = 2; m <= 4; ++m)
        for (int t = 1; t <= 6; ++t) {
            const std::string at = " m=" + std::to_string(m) + " t=" + std::to_string(t);
            check_diameter(build_base(m, t), 4, "base" + at);
            check_diameter(build_wheel(m, t), 4, "wheel" + at);
            for (double p : {0.0, 0.5, 1.0})
                for (uint64_t seed = 1; seed <= 3; ++seed)
                    check_diameter(build_deleted(m, t, p, seed), 4,
                                   "deleted" + at + " p=" + fmt(p) +
                                       " seed=" + std::to_string(seed));
        }
    detail = std::to_string(graphs) + " graphs";
}

void base_clustering_criterion(std::string& detail) {
    int graphs = 0;
    for (int m = 2; m <= 4; ++m)
        for (int t = 1; t <= 6; ++t) {
            GraphInstance g = build_base(m, t);
            auto c = measure::average_local_clustering(g);
            require(c.average == 0.0 && c.triangles == 0,
                    "nonzero clustering at m=" + std::to_string(m) +
                        " t=" + std::to_string(t));
            ++graphs;
        }
    detail = std::to_string(graphs) + " graphs, all exactly 0";
}

void assortativity_criterion(std::string& detail) {
    require(analytic::assortativity(2, 1).value == Rational(-1, 3),
            "closed form r(t=1,m=2) != -1/3");
    for (int m = 2; m <= 4; ++m)
        for (int t = 1; t <= 6; ++t) {
            GraphInstance g = build_base(m, t);
            Rational measured = measure::assortativity_pearson_exact(g);
            Rational closed = analytic::assortativity(m, t).value;
            require(measured == closed, "exact assortativity mismatch at m=" +
                                            std::to_string(m) + " t=" + std::to_string(t));
            double diff = std::abs(measured.convert_to<double>() -
                                   closed.convert_to<double>());
            require(diff <= 1e-9, "float assortativity gap " + fmt(diff));
        }
    detail = "exact rational equality on the full grid; spot r(1;2) = -1/3";
}

void hitting_solve_criterion(std::string& detail) {
    require(analytic::hitting_closed_forms(2, 1).mean.value == Rational(10, 3),
            "closed mean (m=2,t=1) != 10/3");
    require(analytic::hitting_closed_forms(2, 2).mean.value == Rational(38, 7),
            "closed mean (m=2,t=2) != 38/7");
    for (int m = 2; m <= 4; ++m)
        for (int t = 1; t <= 6; ++t) {
            GraphInstance g = build_base(m, t);
            auto solved = walk::exact_hitting_solve(walk::TrapSpec(g));
            const std::string at = " at m=" + std::to_string(m) + " t=" + std::to_string(t);
            for (const auto& [level, value] : solved.per_level) {
                double expected = (level == t + 1) ? 2 * t + 1 : 2 * t + 2;
                require(std::abs(value - expected) <= 1e-9,
                        "level " + std::to_string(level) + " hitting time off" + at +
                            ": " + fmt(value));
            }
            double closed = analytic::hitting_closed_forms(m, t).mean.approx();
            require(std::abs(solved.mean - closed) <= 1e-9,
                    "mean hitting time off" + at + ": " + fmt(solved.mean) + " vs " +
                        fmt(closed));
        }
    detail = "per-level and mean values match on the full grid";
}

void monte_carlo_criterion(std::string& detail) {
    std::string notes;
    for (auto [m, t] : {std::pair{2, 1}, std::pair{3, 2}}) {
        GraphInstance g = build_base(m, t);
        walk::TrapSpec spec(g);
        walk::WalkOptions opts;
        opts.trials = 100'000;
        opts.seed = kPinnedSeed;
        auto mc = walk::simulate_walks(spec, opts);
        double exact = analytic::hitting_closed_forms(m, t).mean.approx();
        double gap = std::abs(mc.mean - exact);
        const std::string at = "m=" + std::to_string(m) + " t=" + std::to_string(t);
        require(gap <= 3.0 * mc.std_error,
                at + ": |" + fmt(mc.mean) + " - " + fmt(exact) + "| > 3 SE (" +
                    fmt(mc.std_error) + ")");
        auto dist = walk::hitting_distribution(spec, std::nullopt, mc.max_steps);
        require(dist.tail < 1e-6, at + ": truncation mass " + fmt(dist.tail));
        require(mc.truncated == 0 || !mc.truncation_flagged,
                at + ": truncated trials flagged");
        notes += at + " gap=" + fmt(gap / mc.std_error) + "SE tail=" + fmt(dist.tail) + "  ";
    }
    detail = notes;
}

void hitting_trend_criterion(std::string& detail) {
    for (int m = 2; m <= 4; ++m)
        for (int t = 1; t <= 20; ++t) {
            Rational mean = analytic::hitting_closed_forms(m, t).mean.value;
            require(mean > 2 * t + 1 && mean < 2 * t + 2,
                    "mean outside (2t+1, 2t+2) at m=" + std::to_string(m) +
                        " t=" + std::to_string(t));
        }
    std::string gaps;
    bool within = true;
    for (int m = 2; m <= 4; ++m) {
        double ratio = analytic::hitting_closed_forms(m, 20).mean_over_log_v;
        double target = 2.0 / std::log(static_cast<double>(m));
        double rel = std::abs(ratio - target) / target;
        gaps += "m=" + std::to_string(m) + ": " + fmt(100 * rel) + "%  ";
        if (rel > 0.05) within = false;
    }
    require(within, "ratio to 2/ln m off by more than 5% at t=20: " + gaps);
    detail = "interval check t=1..20 and t=20 ratios: " + gaps;
}

void powerlaw_criterion(std::string& detail) {
    GraphInstance g = build_base(2, 12);
    double slope = measure::powerlaw_slope(g);
    require(slope >= -1.15 && slope <= -0.85,
            "slope " + fmt(slope) + " outside -1 +/- 0.15");
    detail = "slope of G(12;2) = " + fmt(slope);
}

void deleted_expectation_criterion(Runner& runner, std::string& detail) {
    const int m = 3, t = 3;
    // p = 0 and p = 1 reduce exactly to the wheel and base edge counts.
    GraphInstance wheel = build_wheel(m, t);
    GraphInstance del0 = build_deleted(m, t, 0.0, 1);
    require(graph_equal(del0, wheel), "p=0 instance differs from the wheel");
    Rational e0 = analytic::deleted_expected_sums(m, t, Rational(0)).edges.value;
    require(Rational(del0.edge_count()) == e0, "p=0 expected edge count mismatch");

    GraphInstance base = build_base(m, t);
    GraphInstance del1 = build_deleted(m, t, 1.0, 1);
    require(graph_equal(del1, base), "p=1 instance differs from the base graph");
    Rational e1 = analytic::deleted_expected_sums(m, t, Rational(1)).edges.value;
    require(Rational(del1.edge_count()) == e1, "p=1 expected edge count mismatch");

    // 200-seed sample of |E| at p = 1/2 against the expectation 364.5.
    std::vector<double> edge_counts;
    std::vector<double> sum_prod, sum_deg, sum_square;
    for (uint64_t i = 0; i < 200; ++i) {
        GraphInstance g = build_deleted(m, t, 0.5, kPinnedSeed + i);
        edge_counts.push_back(static_cast<double>(g.edge_count()));
        if (runner.full()) {
            BigInt s1 = 0, s2 = 0, s3 = 0;
            g.for_each_edge([&](uint32_t u, uint32_t v) {
                BigInt ku = g.degree(u), kv = g.degree(v);
                s1 += ku * kv;
                s2 += ku + kv;
                s3 += ku * ku + kv * kv;
            });
            sum_prod.push_back(s1.convert_to<double>());
            sum_deg.push_back(s2.convert_to<double>());
            sum_square.push_back(s3.convert_to<double>());
        }
    }
    auto stats = stats_of(edge_counts);
    auto sums = analytic::deleted_expected_sums(m, t, Rational(1, 2));
    double expected = sums.edges.approx();
    double gap = std::abs(stats.mean - expected);
    require(gap <= 4.0 * stats.std_error,
            "|E| sample mean " + fmt(stats.mean) + " more than 4 SE from " + fmt(expected));
    detail = "sample mean " + fmt(stats.mean) + " vs " + fmt(expected) + " (" +
             fmt(gap / stats.std_error) + " SE)";

    if (runner.full()) {
        json& d = runner.report.discrepancies["deleted_expected_sums"];
        d["params"] = {{"m", m}, {"t", t}, {"p", 0.5}, {"seeds", 200}};
        d["edges"] = ci_entry(expected, stats);
        d["sum_deg_product"] = ci_entry(sums.sum_deg_product.approx(), stats_of(sum_prod));
        d["sum_deg"] = ci_entry(sums.sum_deg.approx(), stats_of(sum_deg));
        d["sum_deg_square"] = ci_entry(sums.sum_deg_square.approx(), stats_of(sum_square));
    }
}

void wheel_clustering_criterion(Runner& runner, std::string& detail) {
    require(analytic::wheel_clustering(3, 0).value == Rational(1, 2),
            "wheel clustering (m=3,t=0) != 1/2");
    require(analytic::wheel_clustering(2, 0).value == Rational(8, 9),
            "wheel clustering (m=2,t=0) != 8/9");
    double measured_k4 =
        measure::average_local_clustering(build_wheel(3, 0)).average;
    detail = "hand values reproduced; measured K4 clustering " + fmt(measured_k4) +
             " vs closed form 0.5 (known gap, reported)";

    if (runner.full()) {
        json rows = json::array();
        for (int m = 2; m <= 4; ++m)
            for (int t = 0; t <= 3; ++t) {
                GraphInstance g = build_wheel(m, t);
                double measured = measure::average_local_clustering(g).average;
                double formula = analytic::wheel_clustering(m, t).approx();
                rows.push_back({{"m", m},
                                {"t", t},
                                {"closed_form", formula},
                                {"measured", measured},
                                {"abs_diff", std::abs(formula - measured)}});
            }
        runner.report.discrepancies["wheel_clustering"] = std::move(rows);
    }
}

void assortativity_trend_criterion(std::string& detail) {
    sweep::SweepSpec spec;
    spec.variant = Variant::Base;
    spec.ms = {2, 4, 6, 8};
    for (int t = 1; t <= 12; ++t) spec.ts.push_back(t);
    spec.quantities = {sweep::Quantity::Assortativity};
    spec.measure = false;
    auto rows = sweep::run_sweep(spec);
    require(rows.size() == 4 * 12, "unexpected sweep row count");

    std::map<int, std::map<int, double>> r_of;
    for (const auto& row : rows) {
        require(row.error.empty(), "sweep error: " + row.error);
        r_of[row.m][row.t] = std::stod(row.closed_form);
    }
    for (int m : spec.ms)
        for (int t = 4; t <= 11; ++t) {
            double now = std::abs(r_of[m][t]);
            double next = std::abs(r_of[m][t + 1]);
            require(next < now, "|r| not decreasing at m=" + std::to_string(m) + " t=" +
                                    std::to_string(t) + "->" + std::to_string(t + 1) +
                                    " (" + fmt(now) + " -> " + fmt(next) + ")");
        }
    detail = "|r(t;m)| monotone on t in [4,12] for m in {2,4,6,8}";
}

// Report-only comparisons beyond the per-criterion ones.
void collect_full_discrepancies(Runner& runner) {
    json& report = runner.report.discrepancies;

    {  // expected clustering after deletion vs simulation
        const int m = 2, t = 1;
        const double p = 0.5;
        std::vector<double> measured;
        for (uint64_t i = 0; i < 500; ++i)
            measured.push_back(measure::average_local_clustering(
                                   build_deleted(m, t, p, kPinnedSeed + i))
                                   .average);
        double formula =
            analytic::deleted_clustering_expected(m, t, Rational(1, 2)).approx();
        report["deleted_clustering"] = {{"params", {{"m", m}, {"t", t}, {"p", p}}},
                                        {"comparison", ci_entry(formula, stats_of(measured))}};
    }

    {  // two-branch asymptotic form vs exact cumulative distribution
        json rows = json::array();
        auto add = [&](int m, int t, double k, Rational exact) {
            rows.push_back({{"m", m},
                            {"t", t},
                            {"k", k},
                            {"asymptotic", analytic::asymptotic_cumulative(m, t, k)},
                            {"exact", exact.convert_to<double>()}});
        };
        add(2, 1, 4.0, Rational(1, 7));
        add(2, 12, 8192.0, Rational(1, 16383));
        add(3, 2, 1.0, Rational(1));
        report["asymptotic_cumulative"] = std::move(rows);
    }

    {  // growth of the average degree: exact ratio vs the 2t shorthand
        json rows = json::array();
        for (int m = 2; m <= 4; ++m) {
            Rational k = analytic::average_degree(m, 50).value;
            rows.push_back({{"m", m},
                            {"t", 50},
                            {"avg_degree", k.convert_to<double>()},
                            {"ratio_to_2t", (k / 100).convert_to<double>()},
                            {"per_step_limit", 2.0 * (m - 1) / m}});
        }
        report["average_degree_growth"] = std::move(rows);
    }

    {  // mean hitting time vs ln |V| at t = 20
        json rows = json::array();
        for (int m = 2; m <= 4; ++m) {
            auto h = analytic::hitting_closed_forms(m, 20);
            double target = 2.0 / std::log(static_cast<double>(m));
            rows.push_back({{"m", m},
                            {"t", 20},
                            {"ratio", h.mean_over_log_v},
                            {"limit", target},
                            {"rel_gap", std::abs(h.mean_over_log_v - target) / target}});
        }
        report["hitting_log_ratio"] = std::move(rows);
    }

    {  // sign of the expected assortativity after deletion
        json rows = json::array();
        json negatives = json::array();
        for (int m : {2, 4, 6, 8})
            for (int t = 1; t <= 8; ++t)
                for (double p : {0.25, 0.5, 0.75}) {
                    double r2 = analytic::deleted_expected_sums(
                                    m, t, rational_from_double(p))
                                    .r2.approx();
                    rows.push_back({{"m", m}, {"t", t}, {"p", p}, {"r2", r2}});
                    if (r2 < 0) negatives.push_back({{"m", m}, {"t", t}, {"p", p}});
                }
        report["deleted_assortativity"] = {{"values", std::move(rows)},
                                           {"negative_cells", std::move(negatives)}};
    }
}

}  // namespace

Report run(Level level, std::ostream* progress) {
    Runner runner(level, progress);

    runner.criterion(1, "counts match closed forms", counts_criterion);
    runner.criterion(2, "degree table matches measurement", degree_table_criterion);
    runner.criterion(3, "diameter invariant", diameter_criterion);
    runner.criterion(4, "base clustering is zero", base_clustering_criterion);
    runner.criterion(5, "assortativity closed form vs Pearson", assortativity_criterion);
    runner.criterion(6, "hitting times: solve vs closed forms", hitting_solve_criterion);
    runner.criterion(7, "Monte Carlo hitting mean", monte_carlo_criterion);
    runner.criterion(8, "mean hitting time vs log of size", hitting_trend_criterion);
    runner.criterion(9, "power-law slope", powerlaw_criterion);
    runner.criterion(10, "deleted-variant edge expectations",
                     [&](std::string& d) { deleted_expectation_criterion(runner, d); });
    runner.criterion(11, "wheel clustering evaluator",
                     [&](std::string& d) { wheel_clustering_criterion(runner, d); });
    runner.criterion(12, "assortativity trend sweep", assortativity_trend_criterion);

    if (runner.full()) collect_full_discrepancies(runner);
    return std::move(runner.report);
}

}  // namespace hsfnet::verify
