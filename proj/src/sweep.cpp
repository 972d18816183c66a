#include "hsfnet/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hsfnet/analytic.hpp"
#include "hsfnet/build.hpp"
#include "hsfnet/measure.hpp"
#include "hsfnet/walk.hpp"

namespace hsfnet::sweep {
namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

struct Cell {
    int m = 0, t = 0;
    std::optional<double> p;
};

std::optional<double> closed_value(const SweepSpec& spec, const Cell& cell, Quantity q) {
    const int m = cell.m, t = cell.t;
    const Rational p = cell.p ? rational_from_double(*cell.p) : Rational(0);
    auto closed_edges = [&]() -> Rational {
        switch (spec.variant) {
            case Variant::Base: return analytic::counts(m, t).second.value;
            case Variant::Wheel: return analytic::wheel_edges(m, t).value;
            case Variant::Deleted: return analytic::deleted_expected_sums(m, t, p).edges.value;
        }
        return Rational(0);
    };
    switch (q) {
        case Quantity::Edges: return closed_edges().convert_to<double>();
        case Quantity::AverageDegree: {
            Rational v = analytic::counts(m, t).first.value;
            return (2 * closed_edges() / v).convert_to<double>();
        }
        case Quantity::Diameter:
            return analytic::diameter_closed_form(spec.variant, m, t, cell.p.value_or(0.0));
        case Quantity::Clustering:
            switch (spec.variant) {
                case Variant::Base: return 0.0;
                case Variant::Wheel: return analytic::wheel_clustering(m, t).approx();
                case Variant::Deleted:
                    return analytic::deleted_clustering_expected(m, t, p).approx();
            }
            return std::nullopt;
        case Quantity::Assortativity:
            switch (spec.variant) {
                case Variant::Base: return analytic::assortativity(m, t).approx();
                case Variant::Wheel:
                    return analytic::deleted_expected_sums(m, t, Rational(0)).r2.approx();
                case Variant::Deleted:
                    return analytic::deleted_expected_sums(m, t, p).r2.approx();
            }
            return std::nullopt;
        case Quantity::HittingMean:
            if (spec.variant == Variant::Base)
                return analytic::hitting_closed_forms(m, t).mean.approx();
            return std::nullopt;  // no closed form off the base family
    }
    return std::nullopt;
}

std::optional<double> measured_value(const GraphInstance& g, Quantity q) {
    switch (q) {
        case Quantity::Edges: return static_cast<double>(g.edge_count());
        case Quantity::AverageDegree:
            return 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.n());
        case Quantity::Diameter: return measure::diameter_bfs(g).diameter;
        case Quantity::Clustering: return measure::average_local_clustering(g).average;
        case Quantity::Assortativity: return measure::assortativity_pearson(g);
        case Quantity::HittingMean: return walk::exact_hitting_solve(walk::TrapSpec(g)).mean;
    }
    return std::nullopt;
}

std::vector<SweepRow> eval_cell(const SweepSpec& spec, const Cell& cell) {
    std::vector<SweepRow> rows;
    const bool deleted = spec.variant == Variant::Deleted;

    BigInt v = (mpow(cell.m, cell.t + 2) - 1) / (cell.m - 1);
    const bool measurable = spec.measure && v <= spec.measure_cap;

    std::vector<GraphInstance> instances;
    std::string build_error;
    if (measurable) {
        try {
            BuildOptions opts{spec.size_cap};
            if (deleted) {
                for (int i = 0; i < spec.seeds_per_cell; ++i)
                    instances.push_back(build_deleted(cell.m, cell.t, *cell.p,
                                                      spec.base_seed + i, opts));
            } else {
                instances.push_back(spec.variant == Variant::Base
                                        ? build_base(cell.m, cell.t, opts)
                                        : build_wheel(cell.m, cell.t, opts));
            }
        } catch (const std::exception& e) {
            build_error = e.what();
        }
    }

    for (Quantity q : spec.quantities) {
        SweepRow row;
        row.variant = spec.variant;
        row.m = cell.m;
        row.t = cell.t;
        row.p = cell.p;
        if (deleted) row.seed = spec.base_seed;
        row.quantity = q;
        try {
            if (auto closed = closed_value(spec, cell, q)) row.closed_form = fmt(*closed);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        if (!build_error.empty()) {
            row.error = build_error;
        } else if (!instances.empty()) {
            try {
                double sum = 0, sum_sq = 0;
                size_t count = 0;
                for (const GraphInstance& g : instances) {
                    if (auto x = measured_value(g, q)) {
                        sum += *x;
                        sum_sq += *x * *x;
                        ++count;
                    }
                }
                if (count > 0) {
                    double mean = sum / static_cast<double>(count);
                    row.measured = fmt(mean);
                    if (count > 1) {
                        double var = (sum_sq - sum * sum / static_cast<double>(count)) /
                                     static_cast<double>(count - 1);
                        row.std_error = fmt(std::sqrt(std::max(0.0, var) /
                                                      static_cast<double>(count)));
                    }
                }
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

const char* quantity_name(Quantity q) {
    switch (q) {
        case Quantity::Edges: return "edges";
        case Quantity::AverageDegree: return "avg_degree";
        case Quantity::Diameter: return "diameter";
        case Quantity::Clustering: return "clustering";
        case Quantity::Assortativity: return "assortativity";
        case Quantity::HittingMean: return "hitting_mean";
    }
    return "?";
}

std::optional<Quantity> quantity_from_name(const std::string& name) {
    for (Quantity q : {Quantity::Edges, Quantity::AverageDegree, Quantity::Diameter,
                       Quantity::Clustering, Quantity::Assortativity, Quantity::HittingMean})
        if (name == quantity_name(q)) return q;
    return std::nullopt;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    if (spec.ms.empty() || spec.ts.empty()) throw std::invalid_argument("empty sweep grid");
    if (spec.quantities.empty()) throw std::invalid_argument("no quantities requested");
    const bool deleted = spec.variant == Variant::Deleted;
    if (deleted && spec.ps.empty())
        throw std::invalid_argument("deleted sweep needs a p list");
    if (!deleted && !spec.ps.empty())
        throw std::invalid_argument("p list applies only to the deleted variant");
    if (spec.seeds_per_cell < 1) throw std::invalid_argument("seeds_per_cell must be >= 1");

    std::vector<Cell> cells;
    for (int m : spec.ms)
        for (int t : spec.ts) {
            if (deleted)
                for (double p : spec.ps) cells.push_back({m, t, p});
            else
                cells.push_back({m, t, {}});
        }

    std::vector<std::vector<SweepRow>> per_cell(cells.size());
    unsigned jobs = spec.jobs > 0 ? static_cast<unsigned>(spec.jobs)
                                  : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, cells.size());

    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            try {
                per_cell[i] = eval_cell(spec, cells[i]);
            } catch (const std::exception& e) {
                SweepRow row;
                row.variant = spec.variant;
                row.m = cells[i].m;
                row.t = cells[i].t;
                row.p = cells[i].p;
                row.error = e.what();
                per_cell[i] = {row};
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<SweepRow> rows;
    for (auto& block : per_cell)
        for (auto& row : block) rows.push_back(std::move(row));
    return rows;
}

std::string csv_header() {
    return "variant,m,t,p,seed,quantity,closed_form,measured,stderr,error";
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << csv_header() << '\n';
    for (const SweepRow& r : rows) {
        out << variant_name(r.variant) << ',' << r.m << ',' << r.t << ',';
        if (r.p) out << fmt(*r.p);
        out << ',';
        if (r.seed) out << *r.seed;
        out << ',' << quantity_name(r.quantity) << ',' << r.closed_form << ','
            << r.measured << ',' << r.std_error << ',' << r.error << '\n';
    }
}

}  // namespace hsfnet::sweep
