#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hsfnet/analytic.hpp"
#include "hsfnet/build.hpp"
#include "hsfnet/measure.hpp"
#include "hsfnet/serialize.hpp"
#include "hsfnet/sweep.hpp"
#include "hsfnet/verify.hpp"
#include "hsfnet/walk.hpp"

namespace {

using nlohmann::json;
using namespace hsfnet;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitComputation = 2;
constexpr int kExitVerification = 3;

struct ParamFlags {
    std::string variant = "base";
    int m = 2;
    int t = 1;
    double p = -1.0;
    uint64_t seed = 1;
    bool seed_given = false;
};

void add_param_flags(CLI::App* cmd, ParamFlags& flags) {
    cmd->add_option("--variant", flags.variant, "graph family: base|wheel|deleted")
        ->check(CLI::IsMember({"base", "wheel", "deleted"}));
    cmd->add_option("-m", flags.m, "branching count (>= 2)");
    cmd->add_option("-t", flags.t, "generation index (>= 0)");
    cmd->add_option("-p", flags.p, "rim deletion probability (deleted variant)");
    cmd->add_option("--seed", flags.seed, "RNG seed (deleted variant)")
        ->each([&flags](const std::string&) { flags.seed_given = true; });
}

ModelParams params_from_flags(const ParamFlags& flags) {
    Variant variant = *variant_from_name(flags.variant);
    if (variant != Variant::Deleted && (flags.p >= 0 || flags.seed_given))
        throw std::invalid_argument("-p and --seed apply only to the deleted variant");
    switch (variant) {
        case Variant::Base: return ModelParams::base(flags.m, flags.t);
        case Variant::Wheel: return ModelParams::wheel(flags.m, flags.t);
        case Variant::Deleted: {
            if (flags.p < 0) throw std::invalid_argument("deleted variant requires -p");
            return ModelParams::deleted(flags.m, flags.t, flags.p, flags.seed);
        }
    }
    throw std::logic_error("unknown variant");
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

json scalar_json(const ExactScalar& s) {
    return {{"exact", s.str()}, {"value", s.approx()}};
}

json closed_json(const analytic::ClosedFormReport& r) {
    json j;
    j["variant"] = variant_name(r.params.variant);
    j["m"] = r.params.m;
    j["t"] = r.params.t;
    if (r.params.p) j["p"] = *r.params.p;
    if (r.params.seed) j["seed"] = *r.params.seed;
    j["vertices"] = scalar_json(r.vertices);
    j["edges"] = scalar_json(r.edges);
    j["average_degree"] = scalar_json(r.average_degree);
    if (r.growth_ratio) j["average_degree_per_generation"] = scalar_json(*r.growth_ratio);
    j["diameter"] = r.diameter;
    j["gamma_alpha"] = r.gamma_alpha;
    j["gamma"] = r.gamma;
    j["clustering"] = scalar_json(r.clustering);
    if (r.assortativity) j["assortativity"] = scalar_json(*r.assortativity);
    if (r.deleted_sums) {
        const auto& s = *r.deleted_sums;
        j["expected_sums"] = {{"edges", scalar_json(s.edges)},
                              {"sum_deg_product", scalar_json(s.sum_deg_product)},
                              {"sum_deg", scalar_json(s.sum_deg)},
                              {"sum_deg_square", scalar_json(s.sum_deg_square)},
                              {"assortativity", scalar_json(s.r2)}};
    }
    if (r.hitting) {
        json h;
        h["bottom"] = r.hitting->bottom.convert_to<int64_t>();
        if (r.hitting->intermediate)
            h["intermediate"] = r.hitting->intermediate->convert_to<int64_t>();
        h["mean"] = scalar_json(r.hitting->mean);
        h["mean_over_log_v"] = r.hitting->mean_over_log_v;
        j["hitting"] = std::move(h);
    }
    return j;
}

json measured_json(const measure::MeasuredReport& r) {
    json j;
    json hist = json::object();
    for (const auto& [degree, count] : r.histogram.counts)
        hist[std::to_string(degree)] = count;
    j["degree_histogram"] = std::move(hist);
    json cum = json::array();
    for (const auto& [degree, mass] : r.histogram.cumulative)
        cum.push_back({{"k", degree},
                       {"exact", ExactScalar(mass).str()},
                       {"value", mass.convert_to<double>()}});
    j["cumulative_distribution"] = std::move(cum);
    j["diameter"] = r.diameter.diameter;
    j["diameter_exact"] = r.diameter.exact;
    j["clustering"] = r.clustering.average;
    json per_level = json::object();
    for (const auto& [level, value] : r.clustering.per_level)
        per_level[std::to_string(level)] = value;
    j["clustering_per_level"] = std::move(per_level);
    j["triangles"] = r.clustering.triangles;
    if (r.assortativity) j["assortativity"] = *r.assortativity;
    if (r.assortativity_exact) j["assortativity_exact"] = *r.assortativity_exact;
    if (r.slope) j["powerlaw_slope"] = *r.slope;
    j["connected"] = r.connected;
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

// Closed-form vs measured, plus the known formula gaps, for one instance.
json analyze_json(const GraphInstance& g, const analytic::ClosedFormReport& closed,
                  const measure::MeasuredReport& measured) {
    json j;
    j["closed_form"] = closed_json(closed);
    j["measured"] = measured_json(measured);

    json agreement = json::array();
    auto add = [&](const std::string& quantity, double closed_value, double measured_value) {
        agreement.push_back({{"quantity", quantity},
                             {"closed_form", closed_value},
                             {"measured", measured_value},
                             {"abs_diff", std::abs(closed_value - measured_value)}});
    };
    add("vertices", closed.vertices.approx(), static_cast<double>(g.n()));
    add("edges", closed.edges.approx(), static_cast<double>(g.edge_count()));
    add("average_degree", closed.average_degree.approx(),
        2.0 * static_cast<double>(g.edge_count()) / g.n());
    add("diameter", closed.diameter, measured.diameter.diameter);
    add("clustering", closed.clustering.approx(), measured.clustering.average);
    if (closed.assortativity && measured.assortativity)
        add("assortativity", closed.assortativity->approx(), *measured.assortativity);
    j["agreement"] = std::move(agreement);

    json gaps = json::array();
    const int m = closed.params.m, t = closed.params.t;
    if (closed.params.variant != Variant::Base) {
        gaps.push_back(
            {{"quantity", "clustering"},
             {"note", "closed-form wheel clustering undercounts neighbor edges on "
                      "concrete instances; measured value is authoritative"},
             {"closed_form", closed.clustering.approx()},
             {"measured", measured.clustering.average}});
    }
    {
        double k = static_cast<double>(m);  // smallest active class degree
        Rational exact = 0;
        for (const auto& [degree, mass] : measured.histogram.cumulative)
            if (degree >= static_cast<uint64_t>(m)) {
                exact = mass;
                break;
            }
        gaps.push_back({{"quantity", "cumulative_distribution"},
                        {"note", "two-branch asymptotic form vs exact counts"},
                        {"k", k},
                        {"asymptotic", analytic::asymptotic_cumulative(m, t, k)},
                        {"exact", exact.convert_to<double>()}});
    }
    if (t >= 1) {
        gaps.push_back({{"quantity", "average_degree"},
                        {"note", "exact ratio to 2t; the 2t shorthand is asymptotic"},
                        {"ratio_to_2t", closed.average_degree.approx() / (2.0 * t)}});
    }
    j["discrepancy"] = std::move(gaps);
    return j;
}

// Relative output paths land in $HSFNET_OUT_DIR when it is set.
std::string resolve_output(const std::string& path) {
    const char* dir = std::getenv("HSFNET_OUT_DIR");
    if (!dir || !*dir || path.empty() || path.front() == '/') return path;
    std::string resolved(dir);
    if (resolved.back() != '/') resolved += '/';
    return resolved + path;
}

std::ostream& open_output(std::ofstream& file, const std::string& path, std::ostream& fallback) {
    if (path.empty()) return fallback;
    const std::string resolved = resolve_output(path);
    file.open(resolved, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + resolved);
    return file;
}

// ---- subcommands ----------------------------------------------------------

int cmd_generate(const ParamFlags& flags, const std::string& format_name,
                 const std::string& out_path) {
    ModelParams params = params_from_flags(flags);
    GraphInstance g = build(params);

    ExportFormat format = ExportFormat::EdgeList;
    if (format_name == "dot") format = ExportFormat::Dot;
    else if (format_name == "json") format = ExportFormat::Json;

    std::ofstream file;
    std::ostream& out = open_output(file, out_path, std::cout);
    export_edges(g, format, out);

    auto closed = analytic::closed_form_report(params);
    std::ostream& info = out_path.empty() ? std::cerr : std::cout;
    info << "variant=" << variant_name(params.variant) << " m=" << params.m
         << " t=" << params.t;
    if (params.p) info << " p=" << fmt(*params.p);
    if (params.seed) info << " seed=" << *params.seed;
    info << " |V|=" << g.n() << " |E|=" << g.edge_count()
         << " <k>=" << closed.average_degree.str() << " D=" << closed.diameter
         << " C=" << closed.clustering.str();
    if (closed.assortativity) info << " r=" << fmt(closed.assortativity->approx());
    info << '\n';
    return kExitOk;
}

int cmd_analyze(const ParamFlags& flags, bool flags_given, const std::string& input_path,
                bool csv, uint64_t diameter_cap, const std::string& out_path) {
    GraphInstance g;
    if (!input_path.empty()) {
        std::ifstream in(input_path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open input file: " + input_path);
        std::optional<ModelParams> hint;
        if (flags_given) hint = params_from_flags(flags);
        ImportResult imported = import_edges(in, hint);
        for (const std::string& w : imported.warnings)
            std::cerr << "warning: " << w << '\n';
        g = std::move(imported.graph);
    } else {
        g = build(params_from_flags(flags));
    }

    measure::MeasureOptions opts;
    opts.diameter.exact_cap = diameter_cap;
    measure::MeasuredReport measured = measure::measure_all(g, opts);

    std::ofstream file;
    std::ostream& out = open_output(file, out_path, std::cout);
    if (csv) {
        out << measure::measured_csv_header() << '\n'
            << measure::measured_csv_row(g, measured) << '\n';
        return kExitOk;
    }
    if (g.params()) {
        auto closed = analytic::closed_form_report(*g.params());
        out << analyze_json(g, closed, measured).dump(2) << '\n';
    } else {
        json j;
        j["measured"] = measured_json(measured);
        j["notes"] = {"no model parameters known; closed forms skipped"};
        out << j.dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_walk(const ParamFlags& flags, uint64_t trials, uint64_t walk_seed,
             uint64_t max_steps, int64_t source, bool exact, uint64_t horizon,
             bool csv, const std::string& out_path) {
    ModelParams params = params_from_flags(flags);
    GraphInstance g = build(params);
    walk::TrapSpec spec(g);

    json j;
    j["variant"] = variant_name(params.variant);
    j["m"] = params.m;
    j["t"] = params.t;
    j["trap"] = spec.trap;

    if (params.variant == Variant::Base) {
        auto closed = analytic::hitting_closed_forms(params.m, params.t);
        json h;
        h["bottom"] = closed.bottom.convert_to<int64_t>();
        if (closed.intermediate) h["intermediate"] = closed.intermediate->convert_to<int64_t>();
        h["mean"] = scalar_json(closed.mean);
        h["mean_over_log_v"] = closed.mean_over_log_v;
        auto gf = walk::generating_function_moments(params.m, params.t);
        h["generating_function"] = {{"at_one", ExactScalar(gf.at_one).str()},
                                    {"derivative_at_one",
                                     ExactScalar(gf.derivative_at_one).str()}};
        j["closed_form"] = std::move(h);
    }

    walk::SolveOptions solve_opts;
    solve_opts.rational = exact;
    auto solved = walk::exact_hitting_solve(spec, solve_opts);
    json solve_json;
    solve_json["mean"] = solved.mean;
    if (solved.mean_exact) solve_json["mean_exact"] = ExactScalar(*solved.mean_exact).str();
    json per_level = json::object();
    for (const auto& [level, value] : solved.per_level)
        per_level[std::to_string(level)] = value;
    solve_json["per_level"] = std::move(per_level);
    if (solved.sweeps) solve_json["sweeps"] = solved.sweeps;
    j["linear_solve"] = std::move(solve_json);

    if (g.levels_known() && g.params() && g.params()->variant == Variant::Base) {
        auto collapsed = walk::collapsed_hitting_solve(spec);
        j["collapsed_solve"] = {{"mean_exact", ExactScalar(collapsed.mean).str()},
                                {"mean", collapsed.mean.convert_to<double>()}};
    }

    if (trials > 0) {
        walk::WalkOptions wopts;
        wopts.trials = trials;
        wopts.seed = walk_seed;
        wopts.max_steps = max_steps;
        if (source >= 0) wopts.source = static_cast<uint32_t>(source);
        auto mc = walk::simulate_walks(spec, wopts);
        json mc_json;
        mc_json["trials"] = mc.trials;
        mc_json["mean"] = mc.mean;
        mc_json["stderr"] = mc.std_error;
        mc_json["truncated"] = mc.truncated;
        mc_json["max_steps"] = mc.max_steps;
        mc_json["flagged"] = mc.truncation_flagged;
        json mc_levels = json::object();
        for (const auto& [level, value] : mc.per_level)
            mc_levels[std::to_string(level)] = value;
        mc_json["per_level"] = std::move(mc_levels);
        j["monte_carlo"] = std::move(mc_json);
    }

    if (horizon > 0) {
        std::optional<uint32_t> src;
        if (source >= 0) src = static_cast<uint32_t>(source);
        auto dist = walk::hitting_distribution(spec, src, horizon);
        json d;
        d["horizon"] = dist.horizon;
        d["tail"] = dist.tail;
        d["truncated_mean"] = dist.truncated_mean;
        d["prob"] = dist.prob;
        j["distribution"] = std::move(d);
    }

    std::ofstream file;
    std::ostream& out = open_output(file, out_path, std::cout);
    if (csv) {
        out << "method,level,value,stderr\n";
        for (const auto& [level, value] : solved.per_level)
            out << "linear_solve," << level << ',' << fmt(value) << ",\n";
        out << "linear_solve,mean," << fmt(solved.mean) << ",\n";
        if (j.contains("monte_carlo")) {
            for (const auto& [level, value] : j["monte_carlo"]["per_level"].items())
                out << "monte_carlo," << level << ',' << fmt(value.get<double>()) << ",\n";
            out << "monte_carlo,mean," << fmt(j["monte_carlo"]["mean"].get<double>()) << ','
                << fmt(j["monte_carlo"]["stderr"].get<double>()) << '\n';
        }
        if (horizon > 0)
            for (size_t l = 0; l < j["distribution"]["prob"].size(); ++l)
                out << "distribution," << (l + 1) << ','
                    << fmt(j["distribution"]["prob"][l].get<double>()) << ",\n";
        return kExitOk;
    }
    out << j.dump(2) << '\n';
    return kExitOk;
}

int cmd_sweep(const std::string& variant_name_, const std::vector<int>& ms,
              const std::vector<int>& ts, const std::vector<double>& ps, int seeds,
              uint64_t base_seed, const std::vector<std::string>& quantity_names,
              bool no_measure, uint64_t measure_cap, int jobs,
              const std::string& out_path) {
    sweep::SweepSpec spec;
    spec.variant = *variant_from_name(variant_name_);
    spec.ms = ms;
    spec.ts = ts;
    spec.ps = ps;
    spec.seeds_per_cell = seeds;
    spec.base_seed = base_seed;
    spec.measure = !no_measure;
    spec.measure_cap = measure_cap;
    spec.jobs = jobs;
    for (const std::string& name : quantity_names) {
        auto q = sweep::quantity_from_name(name);
        if (!q) throw std::invalid_argument("unknown quantity: " + name);
        spec.quantities.push_back(*q);
    }
    auto rows = sweep::run_sweep(spec);

    std::ofstream file;
    std::ostream& out = open_output(file, out_path, std::cout);
    sweep::write_csv(out, rows);

    bool total_failure = !rows.empty();
    for (const auto& row : rows)
        if (row.error.empty()) total_failure = false;
    return total_failure ? kExitComputation : kExitOk;
}

int cmd_verify(bool full, const std::string& report_path) {
    verify::Level level = full ? verify::Level::Full : verify::Level::Fast;
    verify::Report report = verify::run(level, &std::cout);

    size_t passed = 0;
    for (const auto& c : report.criteria)
        if (c.passed) ++passed;
    std::cout << passed << "/" << report.criteria.size() << " criteria passed\n";

    if (full) {
        std::string path =
            resolve_output(report_path.empty() ? "discrepancy_report.json" : report_path);
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write report: " + path);
        out << report.discrepancies.dump(2) << '\n';
        std::cout << "discrepancy report written to " << path << '\n';
    }
    return report.all_asserted_passed() ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic hierarchical scale-free graph families: construction, "
                 "closed-form structure, measurement, and hub-trap random walks"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "build one instance and write it out");
    ParamFlags gen_flags;
    add_param_flags(generate, gen_flags);
    std::string gen_format = "edgelist", gen_out;
    generate->add_option("--format", gen_format, "edgelist|dot|json")
        ->check(CLI::IsMember({"edgelist", "dot", "json"}));
    generate->add_option("-o,--output", gen_out, "output file (default: stdout)");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "closed forms vs measurement");
    ParamFlags ana_flags;
    add_param_flags(analyze, ana_flags);
    std::string ana_input, ana_out;
    bool ana_csv = false;
    uint64_t ana_cap = 200'000;
    analyze->add_option("--input", ana_input, "read a graph instead of building one");
    analyze->add_flag("--csv", ana_csv, "flat CSV row instead of JSON");
    analyze->add_option("--diameter-cap", ana_cap,
                        "exact diameter cap; sampled above (default 200000)");
    analyze->add_option("-o,--output", ana_out, "output file (default: stdout)");

    // walk
    auto* walk_cmd = app.add_subcommand("walk", "hub-trap hitting times");
    ParamFlags walk_flags;
    add_param_flags(walk_cmd, walk_flags);
    uint64_t trials = 0, walk_seed = 1, walk_max_steps = 0, horizon = 0;
    int64_t source = -1;
    bool exact = false, walk_csv = false;
    std::string walk_out;
    walk_cmd->add_option("--trials", trials, "Monte Carlo trials (0: skip simulation)");
    walk_cmd->add_option("--walk-seed", walk_seed, "simulation seed");
    walk_cmd->add_option("--max-steps", walk_max_steps,
                         "truncation horizon (0: 100*(2t+2))");
    walk_cmd->add_option("--source", source, "fixed start vertex (default: uniform)");
    walk_cmd->add_flag("--exact", exact, "rational linear solve (small instances)");
    walk_cmd->add_option("--distribution", horizon,
                         "also emit the hitting-time distribution up to this horizon");
    walk_cmd->add_flag("--csv", walk_csv, "CSV rows instead of JSON");
    walk_cmd->add_option("-o,--output", walk_out, "output file (default: stdout)");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a parameter grid to CSV");
    std::string sweep_variant = "base", sweep_out;
    std::vector<int> sweep_ms{2}, sweep_ts{1};
    std::vector<double> sweep_ps;
    std::vector<std::string> sweep_quantities{"clustering"};
    int sweep_seeds = 1, sweep_jobs = 0;
    uint64_t sweep_seed = 1, sweep_cap = 200'000;
    bool sweep_no_measure = false;
    sweep_cmd->add_option("--variant", sweep_variant, "base|wheel|deleted")
        ->check(CLI::IsMember({"base", "wheel", "deleted"}));
    sweep_cmd->add_option("-m", sweep_ms, "m values")->delimiter(',');
    sweep_cmd->add_option("-t", sweep_ts, "t values")->delimiter(',');
    sweep_cmd->add_option("-p", sweep_ps, "p values (deleted variant)")->delimiter(',');
    sweep_cmd->add_option("--seeds", sweep_seeds, "instances per cell (deleted variant)");
    sweep_cmd->add_option("--seed", sweep_seed, "base seed");
    sweep_cmd
        ->add_option("--quantity", sweep_quantities,
                     "edges|avg_degree|diameter|clustering|assortativity|hitting_mean")
        ->delimiter(',');
    sweep_cmd->add_flag("--no-measure", sweep_no_measure, "closed forms only");
    sweep_cmd->add_option("--measure-cap", sweep_cap, "skip measurement above this |V|");
    sweep_cmd->add_option("--jobs", sweep_jobs, "worker pool size (0: hardware)");
    sweep_cmd->add_option("-o,--output", sweep_out, "output file (default: stdout)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the acceptance checks");
    bool verify_full = false;
    std::string verify_report;
    verify_cmd->add_flag("--full", verify_full, "include the report-only comparisons");
    verify_cmd->add_option("--report", verify_report,
                           "discrepancy report path (full mode)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (generate->parsed()) return cmd_generate(gen_flags, gen_format, gen_out);
        if (analyze->parsed()) {
            bool flags_given = analyze->count("--variant") || analyze->count("-m") ||
                               analyze->count("-t");
            return cmd_analyze(ana_flags, flags_given, ana_input, ana_csv, ana_cap, ana_out);
        }
        if (walk_cmd->parsed())
            return cmd_walk(walk_flags, trials, walk_seed, walk_max_steps, source, exact,
                            horizon, walk_csv, walk_out);
        if (sweep_cmd->parsed())
            return cmd_sweep(sweep_variant, sweep_ms, sweep_ts, sweep_ps, sweep_seeds,
                             sweep_seed, sweep_quantities, sweep_no_measure, sweep_cap,
                             sweep_jobs, sweep_out);
        if (verify_cmd->parsed()) return cmd_verify(verify_full, verify_report);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitComputation;
    }
    return kExitUsage;
}
