#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hsfnet/params.hpp"

namespace hsfnet::sweep {

enum class Quantity { Edges, AverageDegree, Diameter, Clustering, Assortativity, HittingMean };

const char* quantity_name(Quantity q);
std::optional<Quantity> quantity_from_name(const std::string& name);

struct SweepSpec {
    Variant variant = Variant::Base;
    std::vector<int> ms;
    std::vector<int> ts;
    std::vector<double> ps;  // deleted variant only
    int seeds_per_cell = 1;
    uint64_t base_seed = 1;
    std::vector<Quantity> quantities;
    bool measure = true;            // also build + measure each cell
    uint64_t measure_cap = 200'000; // skip measurement above this |V|
    uint64_t size_cap = 10'000'000;
    int jobs = 0;                   // worker pool size, 0 = hardware
};

// One row per (cell, quantity); numeric columns already formatted with
// 12 significant digits, empty string when not applicable.
struct SweepRow {
    Variant variant = Variant::Base;
    int m = 0, t = 0;
    std::optional<double> p;
    std::optional<uint64_t> seed;
    Quantity quantity = Quantity::Edges;
    std::string closed_form;
    std::string measured;
    std::string std_error;
    std::string error;
};

// Evaluates the grid on a bounded worker pool; rows come back in grid
// order (m-major, then t, then p) regardless of completion order.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

std::string csv_header();
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace hsfnet::sweep
