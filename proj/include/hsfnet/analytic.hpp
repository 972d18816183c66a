#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hsfnet/params.hpp"
#include "hsfnet/rational.hpp"

namespace hsfnet::analytic {

// One row of the level/degree/count table characterizing the degree
// sequence of the base family.
struct DegreeClass {
    int level;
    BigInt degree;
    BigInt count;
};

// |V| = (m^(t+2)-1)/(m-1), |E| = (t+1) m^(t+1). Satisfies the growth
// recurrence |V(t)| = m|V(t-1)|+1, |E(t)| = m|E(t-1)|+m^(t+1) with
// |V(0)| = m+1, |E(0)| = m.
std::pair<ExactScalar, ExactScalar> counts(int m, int t);

// <k> = 2|E|/|V|, exactly.
ExactScalar average_degree(int m, int t);

// Rows (0, m^(t+1), 1), (L, m^(t+1-L), m^L) for 1<=L<=t, (t+1, t+1, m^(t+1)).
std::vector<DegreeClass> degree_table(int m, int t);

// The asymptotic two-branch form of the cumulative degree distribution:
// k^-1 above the bottom-class degree t+1, k^-1 + 1/2 at or below it.
// This intentionally diverges from exact class counts at small t; the
// exact distribution comes from degree_table / measurement.
double asymptotic_cumulative(int m, int t, double k);

constexpr int kGammaAlpha = 1;  // cumulative power-law exponent
constexpr int kGamma = 2;       // density power-law exponent

// 4 in the growth regime t >= 1 for every variant and every p. For t = 0
// the true seed diameter is returned (2 for a star; 1 for the complete
// seeds W_3 and the m=2 triangle). A deleted seed with p in (0,1) gets
// the generic value 2, which a surviving complete rim may undercut.
int diameter_closed_form(Variant variant, int m, int t, double p = 0.0);

// Closed-form average clustering of the wheel-seeded family. Known to
// disagree with triangle counting on concrete instances (e.g. the t=0,
// m=3 seed is K4 with measured clustering 1 but closed-form 1/2); the
// formula is evaluated verbatim and the gap is surfaced in reports.
ExactScalar wheel_clustering(int m, int t);

// Expected clustering after rim deletion with probability p. Reduces to
// wheel_clustering at p = 0 and to 0 at p = 1.
ExactScalar deleted_clustering_expected(int m, int t, const Rational& p);

// Degree-degree Pearson correlation of the base family in closed form.
// Equals the edge-list statistic of the built graph exactly.
ExactScalar assortativity(int m, int t);

// Expected edge count and edge-degree sums of the deleted variant, as
// published, combined into the Pearson coefficient r2. Only the edge
// count is reproducible by measurement; the three sums are evaluated
// verbatim and compared against simulation in reports only.
struct DeletedExpectedSums {
    ExactScalar edges;              // m^(t+1) (t+2-p)
    ExactScalar sum_deg_product;    // E[sum k_i k_j]
    ExactScalar sum_deg;            // E[sum (k_i+k_j)]
    ExactScalar sum_deg_square;     // E[sum (k_i^2+k_j^2)]
    ExactScalar r2;
};
DeletedExpectedSums deleted_expected_sums(int m, int t, const Rational& p);

// Hub-trap hitting times of the base family: 2t+1 from the bottom
// level, 2t+2 from levels 1..t, and the population-weighted mean over
// non-trap vertices.
struct HittingClosedForms {
    BigInt bottom;                      // 2t+1
    std::optional<BigInt> intermediate; // 2t+2, absent at t=0
    ExactScalar mean;
    double mean_over_log_v;             // mean / ln|V|, trends to 2/ln m
};
HittingClosedForms hitting_closed_forms(int m, int t);

// True edge count of a built wheel instance (rim is a single edge per
// seed block when m = 2).
ExactScalar wheel_edges(int m, int t);

// Everything the closed forms say about one parameter set.
struct ClosedFormReport {
    ModelParams params;
    ExactScalar vertices;
    ExactScalar edges;  // expected count for the deleted variant
    ExactScalar average_degree;
    std::optional<ExactScalar> growth_ratio;  // <k>/t for t >= 1
    int diameter = 0;
    int gamma_alpha = kGammaAlpha;
    int gamma = kGamma;
    ExactScalar clustering;  // 0 / wheel closed form / deleted expectation
    std::optional<ExactScalar> assortativity;
    std::optional<DeletedExpectedSums> deleted_sums;
    std::optional<HittingClosedForms> hitting;  // base only
};
ClosedFormReport closed_form_report(const ModelParams& params);

}  // namespace hsfnet::analytic
