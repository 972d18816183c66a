#include "hsfnet/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace hsfnet::analytic {
namespace {

void check(int m, int t) {
    if (m < 2) throw std::invalid_argument("m must be >= 2");
    if (t < 0) throw std::invalid_argument("t must be >= 0");
}

void check_p(const Rational& p) {
    if (p < 0 || p > 1) throw std::invalid_argument("p must be in [0,1]");
}

BigInt vertices_of(int m, int t) { return (mpow(m, t + 2) - 1) / (m - 1); }
BigInt edges_of(int m, int t) { return BigInt(t + 1) * mpow(m, t + 1); }

// Sum over levels of the per-level clustering contribution of the
// active vertices in the wheel family.
Rational wheel_active_clustering_sum(int m, int t) {
    Rational s = 0;
    for (int i = 0; i <= t; ++i) s += Rational(2 * mpow(m, t - i), mpow(m, i + 1) - 1);
    return s;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace

std::pair<ExactScalar, ExactScalar> counts(int m, int t) {
    check(m, t);
    return {ExactScalar(vertices_of(m, t)), ExactScalar(edges_of(m, t))};
}

ExactScalar average_degree(int m, int t) {
    check(m, t);
    return ExactScalar(Rational(2 * edges_of(m, t), vertices_of(m, t)));
}

std::vector<DegreeClass> degree_table(int m, int t) {
    check(m, t);
    std::vector<DegreeClass> table;
    table.reserve(t + 2);
    table.push_back({0, mpow(m, t + 1), 1});
    for (int level = 1; level <= t; ++level)
        table.push_back({level, mpow(m, t + 1 - level), mpow(m, level)});
    table.push_back({t + 1, t + 1, mpow(m, t + 1)});
    return table;
}

double asymptotic_cumulative(int m, int t, double k) {
    check(m, t);
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    double tail = 1.0 / k;  // k^-gamma_alpha with gamma_alpha = 1
    return k > t + 1 ? tail : tail + 0.5;
}

int diameter_closed_form(Variant variant, int m, int t, double p) {
    check(m, t);
    if (t >= 1) return 4;
    switch (variant) {
        case Variant::Base: return 2;
        case Variant::Wheel: return m <= 3 ? 1 : 2;
        case Variant::Deleted: return p == 0.0 ? (m <= 3 ? 1 : 2) : 2;
    }
    throw std::logic_error("unknown variant");
}

ExactScalar wheel_clustering(int m, int t) {
    check(m, t);
    Rational bottom(2 * (t + 1) * mpow(m, t + 1), BigInt(t + 3) * (t + 2));
    return ExactScalar((wheel_active_clustering_sum(m, t) + bottom) /
                       Rational(vertices_of(m, t)));
}

ExactScalar deleted_clustering_expected(int m, int t, const Rational& p) {
    check(m, t);
    check_p(p);
    Rational q = 1 - p;
    Rational bottom =
        (q * q * Rational(2 * (t + 1), (t + 3) * (t + 2)) + 2 * p * q / (t + 2)) *
        mpow(m, t + 1);
    return ExactScalar((q * wheel_active_clustering_sum(m, t) + bottom) /
                       Rational(vertices_of(m, t)));
}

ExactScalar assortativity(int m, int t) {
    check(m, t);
    Rational prod(mpow(m, t + 2) - m, m - 1);
    Rational half_sum = Rational(t + 1, 2) + Rational(mpow(m, t + 2) - m,
                                                      BigInt(2 * m - 2) * (t + 1));
    Rational half_square = Rational(BigInt(t + 1) * (t + 1), 2) +
                           Rational(mpow(m, 2 * t + 4) - BigInt(m) * m,
                                    BigInt(2 * m * m - 2) * (t + 1));
    Rational b2 = half_sum * half_sum;
    return ExactScalar((prod - b2) / (half_square - b2));
}

DeletedExpectedSums deleted_expected_sums(int m, int t, const Rational& p) {
    check(m, t);
    check_p(p);
    const Rational q = 1 - p;
    const BigInt mt1 = mpow(m, t + 1);
    BigInt geo = 0;  // sum_{i=0}^{t} m^i
    for (int i = 0; i <= t; ++i) geo += mpow(m, i);

    Rational e2 = (Rational(t + 2) - p) * mt1;

    Rational skk = Rational(mt1) * (t + 1) * (p * p * (t + 1) + 2 * p * q * (t + 2));
    skk += Rational(mt1) * (t + 1) * (q * q * (t + 3));
    skk += q * q * q * q * BigInt(t + 3) * (t + 3) * mt1;
    skk += 4 * p * q * q *
           (p * BigInt(t + 2) * (t + 2) + q * BigInt(t + 2) * (t + 3)) * mt1;

    Rational sk = Rational(mt1) * (t + 1) + q * q * (t + 3) * geo;
    sk += Rational(geo) * (p * p * (t + 1) + 2 * p * q * (t + 2));
    sk += 4 * p * q * q * (p * (2 * t + 4) + q * (2 * t + 5)) * mt1;
    sk += q * q * q * q * (2 * t + 6) * mt1;

    Rational sk2 = Rational(mt1) * (geo * m);  // sum_{i=0}^t m^(i+1)
    sk2 += q * q * BigInt(t + 3) * (t + 3) * geo;
    sk2 += Rational(geo) *
           (p * p * BigInt(t + 1) * (t + 1) + 2 * p * q * BigInt(t + 2) * (t + 2));
    sk2 += 2 * q * q *
           (4 * p * p * BigInt(t + 2) * (t + 2) + q * q * BigInt(t + 3) * (t + 3)) * mt1;
    sk2 += 4 * p * q * q * q * (BigInt(t + 2) * (t + 2) + BigInt(t + 3) * (t + 3)) * mt1;

    // Pearson coefficient over the expected sums.
    Rational mean_prod = skk / e2;
    Rational half_mean = sk / (2 * e2);
    Rational half_square = sk2 / (2 * e2);
    Rational b2 = half_mean * half_mean;
    if (half_square == b2)
        throw std::runtime_error("assortativity undefined: degenerate expected sums");
    Rational r2 = (mean_prod - b2) / (half_square - b2);

    return {ExactScalar(e2), ExactScalar(skk), ExactScalar(sk), ExactScalar(sk2),
            ExactScalar(r2)};
}

HittingClosedForms hitting_closed_forms(int m, int t) {
    check(m, t);
    HittingClosedForms h;
    h.bottom = 2 * t + 1;
    if (t >= 1) h.intermediate = 2 * t + 2;
    BigInt v = vertices_of(m, t);
    BigInt intermediate_pop = (mpow(m, t + 1) - m) / (m - 1);  // sum_{L=1}^{t} m^L
    Rational mean(BigInt(2 * t + 2) * intermediate_pop + BigInt(2 * t + 1) * mpow(m, t + 1),
                  v - 1);
    h.mean = ExactScalar(mean);
    h.mean_over_log_v = to_double(mean) / std::log(v.convert_to<double>());
    return h;
}

ExactScalar wheel_edges(int m, int t) {
    check(m, t);
    BigInt rim = (m == 2) ? mpow(2, t) : mpow(m, t + 1);
    return ExactScalar(edges_of(m, t) + rim);
}

ClosedFormReport closed_form_report(const ModelParams& params) {
    validate(params);
    const int m = params.m, t = params.t;
    ClosedFormReport r;
    r.params = params;
    r.vertices = ExactScalar(vertices_of(m, t));
    switch (params.variant) {
        case Variant::Base: {
            r.edges = ExactScalar(edges_of(m, t));
            r.clustering = ExactScalar(0L);
            r.assortativity = assortativity(m, t);
            r.hitting = hitting_closed_forms(m, t);
            break;
        }
        case Variant::Wheel: {
            r.edges = wheel_edges(m, t);
            r.clustering = wheel_clustering(m, t);
            r.assortativity = deleted_expected_sums(m, t, Rational(0)).r2;
            break;
        }
        case Variant::Deleted: {
            Rational p = rational_from_double(*params.p);
            auto sums = deleted_expected_sums(m, t, p);
            r.edges = sums.edges;
            r.clustering = deleted_clustering_expected(m, t, p);
            r.assortativity = sums.r2;
            r.deleted_sums = std::move(sums);
            break;
        }
    }
    r.average_degree = ExactScalar(2 * r.edges.value / r.vertices.value);
    if (t >= 1) r.growth_ratio = ExactScalar(r.average_degree.value / t);
    r.diameter = diameter_closed_form(params.variant, m, t, params.p.value_or(0.0));
    return r;
}

}  // namespace hsfnet::analytic
