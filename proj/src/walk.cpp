#include "hsfnet/walk.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "hsfnet/measure.hpp"

namespace hsfnet::walk {
namespace {

void check_spec(const TrapSpec& spec) {
    if (spec.trap >= spec.graph.n()) throw std::invalid_argument("trap vertex out of range");
    if (spec.graph.n() < 2) throw std::invalid_argument("graph too small for a trapping walk");
}

// splitmix64 finalizer; used to derive independent per-trial streams.
uint64_t mix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

uint64_t bounded_draw(std::mt19937_64& rng, uint64_t n) {
    uint64_t threshold = (0 - n) % n;
    for (;;) {
        uint64_t r = rng();
        if (r >= threshold) return r % n;
    }
}

// Gaussian elimination with partial pivoting; T is double or Rational.
template <class T>
std::vector<T> solve_dense(std::vector<std::vector<T>> a, std::vector<T> b) {
    const size_t n = b.size();
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        if constexpr (std::is_same_v<T, double>) {
            for (size_t row = col + 1; row < n; ++row)
                if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        } else {
            while (pivot < n && a[pivot][col] == 0) ++pivot;
            if (pivot == n) throw std::runtime_error("singular hitting-time system");
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        if (a[col][col] == T(0)) throw std::runtime_error("singular hitting-time system");
        for (size_t row = col + 1; row < n; ++row) {
            if (a[row][col] == T(0)) continue;
            T factor = a[row][col] / a[col][col];
            a[row][col] = T(0);
            for (size_t k = col + 1; k < n; ++k) a[row][k] -= factor * a[col][k];
            b[row] -= factor * b[col];
        }
    }
    std::vector<T> x(n);
    for (size_t row = n; row-- > 0;) {
        T acc = b[row];
        for (size_t k = row + 1; k < n; ++k) acc -= a[row][k] * x[k];
        x[row] = acc / a[row][row];
    }
    return x;
}

template <class T>
std::vector<T> dense_hitting(const GraphInstance& g, uint32_t trap) {
    const uint32_t n = g.n();
    std::vector<uint32_t> index(n, UINT32_MAX);
    uint32_t next = 0;
    for (uint32_t v = 0; v < n; ++v)
        if (v != trap) index[v] = next++;
    const size_t dim = n - 1;

    std::vector<std::vector<T>> a(dim, std::vector<T>(dim, T(0)));
    std::vector<T> b(dim, T(1));
    for (uint32_t v = 0; v < n; ++v) {
        if (v == trap) continue;
        const size_t row = index[v];
        a[row][row] = T(1);
        const T inv_deg = T(1) / T(static_cast<int64_t>(g.degree(v)));
        for (uint32_t u : g.neighbors(v))
            if (u != trap) a[row][index[u]] -= inv_deg;
    }
    std::vector<T> h = solve_dense(std::move(a), std::move(b));

    std::vector<T> per_vertex(n, T(0));
    for (uint32_t v = 0; v < n; ++v)
        if (v != trap) per_vertex[v] = h[index[v]];
    return per_vertex;
}

void fill_aggregates(const GraphInstance& g, uint32_t trap, HittingSummary& s) {
    double total = 0.0;
    std::map<int32_t, std::pair<double, uint64_t>> by_level;
    for (uint32_t v = 0; v < g.n(); ++v) {
        if (v == trap) continue;
        total += s.per_vertex[v];
        if (g.levels_known()) {
            auto& slot = by_level[g.level(v)];
            slot.first += s.per_vertex[v];
            slot.second += 1;
        }
    }
    s.mean = total / static_cast<double>(g.n() - 1);
    for (auto& [level, slot] : by_level)
        s.per_level[level] = slot.first / static_cast<double>(slot.second);
}

}  // namespace

HittingSummary exact_hitting_solve(const TrapSpec& spec, const SolveOptions& opts) {
    check_spec(spec);
    const GraphInstance& g = spec.graph;
    if (!measure::is_connected(g))
        throw std::runtime_error("hitting-time solve requires a connected graph");

    HittingSummary summary;
    summary.method = Method::LinearSolve;

    if (opts.rational) {
        if (g.n() > opts.rational_cap)
            throw std::runtime_error("graph above the rational-solve cap");
        std::vector<Rational> h = dense_hitting<Rational>(g, spec.trap);
        summary.per_vertex.resize(g.n());
        Rational total = 0;
        for (uint32_t v = 0; v < g.n(); ++v) {
            summary.per_vertex[v] = h[v].convert_to<double>();
            total += h[v];
        }
        summary.mean_exact = total / (g.n() - 1);
        fill_aggregates(g, spec.trap, summary);
        return summary;
    }

    if (g.n() <= opts.dense_cap) {
        summary.per_vertex = dense_hitting<double>(g, spec.trap);
        fill_aggregates(g, spec.trap, summary);
        return summary;
    }

    // Gauss-Seidel sweeps; the operator is substochastic so this cannot
    // diverge, slow mixing shows up in the sweep count.
    const uint32_t n = g.n();
    std::vector<double> h(n, 0.0);
    std::vector<double> inv_deg(n);
    for (uint32_t v = 0; v < n; ++v) inv_deg[v] = 1.0 / static_cast<double>(g.degree(v));

    // Row sums of the inverse system matrix are the hitting times
    // themselves, so max-norm error <= residual * max h. Sweep until the
    // update delta is small, then verify that rigorous bound.
    auto residual = [&] {
        double worst = 0.0;
        for (uint32_t v = 0; v < n; ++v) {
            if (v == spec.trap) continue;
            double acc = 0.0;
            for (uint32_t u : g.neighbors(v))
                if (u != spec.trap) acc += h[u];
            worst = std::max(worst, std::abs(h[v] - (1.0 + acc * inv_deg[v])));
        }
        return worst;
    };
    uint64_t sweeps = 0;
    double threshold = opts.tolerance;
    bool converged = false;
    while (sweeps < opts.max_sweeps && !converged) {
        double max_delta = 0.0;
        for (; sweeps < opts.max_sweeps; ++sweeps) {
            max_delta = 0.0;
            for (uint32_t v = 0; v < n; ++v) {
                if (v == spec.trap) continue;
                double acc = 0.0;
                for (uint32_t u : g.neighbors(v))
                    if (u != spec.trap) acc += h[u];
                double next = 1.0 + acc * inv_deg[v];
                max_delta = std::max(max_delta, std::abs(next - h[v]));
                h[v] = next;
            }
            if (max_delta < threshold) {
                ++sweeps;
                break;
            }
        }
        double max_h = 0.0;
        for (double x : h) max_h = std::max(max_h, x);
        converged = residual() * std::max(1.0, max_h) < opts.tolerance;
        threshold /= 10.0;
    }
    if (!converged)
        throw std::runtime_error("hitting-time iteration did not converge");

    summary.per_vertex = std::move(h);
    summary.sweeps = sweeps;
    fill_aggregates(g, spec.trap, summary);
    return summary;
}

CollapsedHitting collapsed_hitting_solve(const TrapSpec& spec) {
    check_spec(spec);
    const GraphInstance& g = spec.graph;
    if (!g.levels_known()) throw std::runtime_error("collapsed solve needs a level map");
    if (g.level(spec.trap) != 0) throw std::runtime_error("collapsed solve expects the hub trap");

    const int levels = g.max_level() + 1;
    // Per-level neighbor profile; must be identical for every vertex of a
    // level for the collapse to be exact (holds for base and wheel).
    std::vector<std::vector<uint64_t>> profile(levels);
    std::vector<uint64_t> population(levels, 0);
    for (uint32_t v = 0; v < g.n(); ++v) {
        const int32_t lv = g.level(v);
        std::vector<uint64_t> counts(levels, 0);
        for (uint32_t u : g.neighbors(v)) ++counts[g.level(u)];
        if (population[lv] == 0)
            profile[lv] = counts;
        else if (profile[lv] != counts)
            throw std::runtime_error("instance is not level-symmetric");
        ++population[lv];
    }

    // (I - T) h = 1 over levels 1..max, T from the per-level profiles.
    const int dim = levels - 1;
    std::vector<std::vector<Rational>> a(dim, std::vector<Rational>(dim, Rational(0)));
    std::vector<Rational> b(dim, Rational(1));
    for (int level = 1; level < levels; ++level) {
        uint64_t degree = 0;
        for (uint64_t c : profile[level]) degree += c;
        a[level - 1][level - 1] = 1;
        for (int other = 1; other < levels; ++other)
            a[level - 1][other - 1] -= Rational(profile[level][other], degree);
    }
    std::vector<Rational> h = solve_dense(std::move(a), std::move(b));

    CollapsedHitting result;
    result.per_level = h;
    Rational total = 0;
    for (int level = 1; level < levels; ++level) total += h[level - 1] * population[level];
    result.mean = total / (g.n() - 1);
    return result;
}

HittingDistribution hitting_distribution(const TrapSpec& spec,
                                         std::optional<uint32_t> source,
                                         uint64_t horizon) {
    check_spec(spec);
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    if (source && (*source >= spec.graph.n() || *source == spec.trap))
        throw std::invalid_argument("source must be a non-trap vertex");

    const GraphInstance& g = spec.graph;
    const uint32_t n = g.n();
    std::vector<double> mass(n, 0.0), next(n, 0.0);
    if (source) {
        mass[*source] = 1.0;
    } else {
        const double u = 1.0 / static_cast<double>(n - 1);
        for (uint32_t v = 0; v < n; ++v)
            if (v != spec.trap) mass[v] = u;
    }

    HittingDistribution dist;
    dist.source = source;
    dist.horizon = horizon;
    dist.prob.reserve(horizon);
    double absorbed_total = 0.0;
    for (uint64_t step = 1; step <= horizon; ++step) {
        std::fill(next.begin(), next.end(), 0.0);
        double absorbed = 0.0;
        for (uint32_t v = 0; v < n; ++v) {
            if (v == spec.trap || mass[v] == 0.0) continue;
            const double share = mass[v] / static_cast<double>(g.degree(v));
            for (uint32_t u : g.neighbors(v)) {
                if (u == spec.trap)
                    absorbed += share;
                else
                    next[u] += share;
            }
        }
        dist.prob.push_back(absorbed);
        absorbed_total += absorbed;
        dist.truncated_mean += static_cast<double>(step) * absorbed;
        mass.swap(next);
    }
    dist.tail = std::max(0.0, 1.0 - absorbed_total);
    return dist;
}

double GeneratingFunctionMoments::eval(double x) const {
    return x / (static_cast<double>(t + 1) - static_cast<double>(t) * x * x);
}

Rational GeneratingFunctionMoments::series_coefficient(uint64_t l) const {
    // x/((t+1) - t x^2) expands to sum_k (1/(t+1)) (t/(t+1))^k x^(2k+1).
    if (l % 2 == 0) return Rational(0);
    const uint64_t k = (l - 1) / 2;
    Rational coeff(1, t + 1);
    Rational ratio(t, t + 1);
    for (uint64_t i = 0; i < k; ++i) coeff *= ratio;
    return coeff;
}

GeneratingFunctionMoments generating_function_moments(int m, int t) {
    if (m < 2) throw std::invalid_argument("m must be >= 2");
    if (t < 0) throw std::invalid_argument("t must be >= 0");
    GeneratingFunctionMoments gf;
    gf.t = t;
    gf.at_one = Rational(1, (t + 1) - t);
    // d/dx [x/((t+1)-t x^2)] at x=1: ((t+1)+t x^2)/((t+1)-t x^2)^2.
    gf.derivative_at_one = Rational(2 * t + 1);
    return gf;
}

HittingSummary simulate_walks(const TrapSpec& spec, const WalkOptions& opts) {
    check_spec(spec);
    if (opts.trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (opts.source && (*opts.source >= spec.graph.n() || *opts.source == spec.trap))
        throw std::invalid_argument("source must be a non-trap vertex");

    const GraphInstance& g = spec.graph;
    const uint32_t n = g.n();

    uint64_t max_steps = opts.max_steps;
    if (max_steps == 0) {
        if (g.levels_known()) {
            const int t = g.max_level() - 1;
            max_steps = 100ull * static_cast<uint64_t>(2 * t + 2);
        } else {
            max_steps = 100ull * n;
        }
    }

    HittingSummary summary;
    summary.method = Method::MonteCarlo;
    summary.max_steps = max_steps;

    double sum = 0.0, sum_sq = 0.0;
    std::map<int32_t, std::pair<double, uint64_t>> by_level;
    uint64_t absorbed_trials = 0;

    for (uint64_t trial = 0; trial < opts.trials; ++trial) {
        std::mt19937_64 rng(mix64(opts.seed + trial));
        uint32_t v;
        if (opts.source) {
            v = *opts.source;
        } else {
            uint64_t idx = bounded_draw(rng, n - 1);
            v = static_cast<uint32_t>(idx >= spec.trap ? idx + 1 : idx);
        }
        const int32_t start_level = g.levels_known() ? g.level(v) : kLevelUnknown;

        uint64_t steps = 0;
        while (v != spec.trap && steps < max_steps) {
            const auto nb = g.neighbors(v);
            v = nb[bounded_draw(rng, nb.size())];
            ++steps;
        }
        if (v != spec.trap) {
            ++summary.truncated;
            continue;
        }
        ++absorbed_trials;
        const double x = static_cast<double>(steps);
        sum += x;
        sum_sq += x * x;
        if (start_level != kLevelUnknown) {
            auto& slot = by_level[start_level];
            slot.first += x;
            slot.second += 1;
        }
    }

    summary.trials = opts.trials;
    if (absorbed_trials > 0) {
        summary.mean = sum / static_cast<double>(absorbed_trials);
        if (absorbed_trials > 1) {
            const double var =
                (sum_sq - sum * sum / static_cast<double>(absorbed_trials)) /
                static_cast<double>(absorbed_trials - 1);
            summary.std_error = std::sqrt(std::max(0.0, var) /
                                          static_cast<double>(absorbed_trials));
        }
    }
    for (auto& [level, slot] : by_level)
        summary.per_level[level] = slot.first / static_cast<double>(slot.second);
    summary.truncation_flagged =
        summary.truncated > 0 &&
        static_cast<double>(summary.truncated) / static_cast<double>(opts.trials) > 1e-6;
    return summary;
}

}  // namespace hsfnet::walk
