#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "pgb/constructors.hpp"
#include "pgb/queries.hpp"
#include "pgb/synthesizers.hpp"
#include "synth_common.hpp"

namespace pgb {

namespace {

// Expected subgraph counts of a k-level stochastic Kronecker graph with the
// symmetric initiator [[a, b], [b, c]], self-pairs and degenerate tuples
// excluded. Derived by summing the per-tuple products over bit positions.
double skg_expected_edges(double a, double b, double c, int k) {
    return 0.5 * (std::pow(a + 2.0 * b + c, k) - std::pow(a + c, k));
}

double skg_expected_two_stars(double a, double b, double c, int k) {
    double ab = a + b, bc = b + c;
    double row2 = std::pow(ab * ab + bc * bc, k);
    double diag_row = std::pow(a * ab + c * bc, k);
    double srow = std::pow(a * a + 2.0 * b * b + c * c, k);
    double diag2 = std::pow(a * a + c * c, k);
    return 0.5 * (row2 - 2.0 * diag_row - srow + 2.0 * diag2);
}

double skg_expected_triangles(double a, double b, double c, int k) {
    double closed = std::pow(a * a * a + 3.0 * a * b * b + 3.0 * b * b * c + c * c * c, k);
    double degen = std::pow(a * a * a + a * b * b + b * b * c + c * c * c, k);
    double diag = std::pow(a * a * a + c * c * c, k);
    return (closed - 3.0 * degen + 2.0 * diag) / 6.0;
}

struct FitResult {
    std::array<double, 3> theta{0.5, 0.5, 0.5};
    double objective = 0.0;
    bool at_boundary = false;
};

// Squared relative moment error, box-constrained to [0, 1]^3, minimized with
// Nelder-Mead from a few fixed starts. Deterministic for fixed targets.
FitResult fit_initiator(double target_m, double target_s2, double target_tri, int k) {
    auto clamp01 = [](std::array<double, 3> x) {
        for (double& v : x) v = std::clamp(v, 0.0, 1.0);
        return x;
    };
    auto objective = [&](const std::array<double, 3>& x) {
        double em = skg_expected_edges(x[0], x[1], x[2], k);
        double es = skg_expected_two_stars(x[0], x[1], x[2], k);
        double et = skg_expected_triangles(x[0], x[1], x[2], k);
        auto rel = [](double model, double target) {
            return (model - target) / std::max(std::fabs(target), 1.0);
        };
        double rm = rel(em, target_m), rs = rel(es, target_s2), rt = rel(et, target_tri);
        return rm * rm + rs * rs + rt * rt;
    };

    const std::array<std::array<double, 3>, 4> starts = {{{0.5, 0.5, 0.5},
                                                          {0.9, 0.5, 0.2},
                                                          {0.7, 0.3, 0.1},
                                                          {0.99, 0.7, 0.4}}};
    FitResult best;
    best.objective = std::numeric_limits<double>::infinity();
    for (const auto& start : starts) {
        // simplex of 4 vertices around the start
        std::array<std::array<double, 3>, 4> simplex;
        std::array<double, 4> value;
        simplex[0] = start;
        for (int i = 1; i < 4; ++i) {
            simplex[static_cast<std::size_t>(i)] = start;
            simplex[static_cast<std::size_t>(i)][static_cast<std::size_t>(i - 1)] =
                std::clamp(start[static_cast<std::size_t>(i - 1)] + 0.15, 0.0, 1.0);
        }
        for (int i = 0; i < 4; ++i)
            value[static_cast<std::size_t>(i)] = objective(simplex[static_cast<std::size_t>(i)]);

        for (int iter = 0; iter < 400; ++iter) {
            std::array<int, 4> order = {0, 1, 2, 3};
            std::sort(order.begin(), order.end(),
                      [&](int x, int y) { return value[static_cast<std::size_t>(x)] < value[static_cast<std::size_t>(y)]; });
            int lo = order[0], hi = order[3], second_hi = order[2];
            if (value[static_cast<std::size_t>(hi)] - value[static_cast<std::size_t>(lo)] < 1e-14) break;

            std::array<double, 3> centroid{0, 0, 0};
            for (int i = 0; i < 4; ++i) {
                if (i == hi) continue;
                for (int d = 0; d < 3; ++d)
                    centroid[static_cast<std::size_t>(d)] +=
                        simplex[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] / 3.0;
            }
            auto blend = [&](double t) {
                std::array<double, 3> x;
                for (int d = 0; d < 3; ++d)
                    x[static_cast<std::size_t>(d)] =
                        centroid[static_cast<std::size_t>(d)] +
                        t * (centroid[static_cast<std::size_t>(d)] -
                             simplex[static_cast<std::size_t>(hi)][static_cast<std::size_t>(d)]);
                return clamp01(x);
            };

            auto reflected = blend(1.0);
            double fr = objective(reflected);
            if (fr < value[static_cast<std::size_t>(lo)]) {
                auto expanded = blend(2.0);
                double fe = objective(expanded);
                simplex[static_cast<std::size_t>(hi)] = fe < fr ? expanded : reflected;
                value[static_cast<std::size_t>(hi)] = std::min(fe, fr);
            } else if (fr < value[static_cast<std::size_t>(second_hi)]) {
                simplex[static_cast<std::size_t>(hi)] = reflected;
                value[static_cast<std::size_t>(hi)] = fr;
            } else {
                auto contracted = blend(-0.5);
                double fc = objective(contracted);
                if (fc < value[static_cast<std::size_t>(hi)]) {
                    simplex[static_cast<std::size_t>(hi)] = contracted;
                    value[static_cast<std::size_t>(hi)] = fc;
                } else {
                    for (int i = 0; i < 4; ++i) {
                        if (i == lo) continue;
                        for (int d = 0; d < 3; ++d)
                            simplex[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] =
                                0.5 * (simplex[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] +
                                       simplex[static_cast<std::size_t>(lo)][static_cast<std::size_t>(d)]);
                        value[static_cast<std::size_t>(i)] = objective(simplex[static_cast<std::size_t>(i)]);
                    }
                }
            }
        }
        for (int i = 0; i < 4; ++i) {
            if (value[static_cast<std::size_t>(i)] < best.objective) {
                best.objective = value[static_cast<std::size_t>(i)];
                best.theta = simplex[static_cast<std::size_t>(i)];
            }
        }
    }
    for (double v : best.theta)
        if (v < 1e-6 || v > 1.0 - 1e-6) best.at_boundary = true;
    return best;
}

} // namespace

// PrivSKG: DP estimates of edge, 2-star, and triangle counts; the edge count
// uses the Laplace mechanism (sensitivity 1), the other two smooth
// sensitivity. The symmetric 2x2 initiator is then fit by moment matching and
// the graph sampled from the Kronecker product distribution, truncated to n
// nodes.
SynthesisRecord privskg_generate(const Graph& g, const PrivacyBudget& budget, std::uint64_t seed,
                                 const AlgorithmConfig& cfg) {
    budget.validate();
    if (budget.delta <= 0.0)
        throw std::invalid_argument("PrivSKG requires delta > 0 (smooth sensitivity counts)");

    SynthesisRecord record;
    record.ledger =
        split_budget(budget, synth_detail::resolve_split(Algorithm::PrivSkg, cfg.budget_split));
    synth_detail::StageClock clock(record);

    const int n = g.node_count();
    int d_max = 0;
    for (int u = 0; u < n; ++u) d_max = std::max(d_max, g.degree(u));

    clock.begin("edges");
    Rng edge_rng = Rng(seed).derive("edges");
    double noisy_m = static_cast<double>(g.edge_count()) +
                     laplace_noise(SensitivityBound::global(1.0),
                                   record.ledger.stage("edges").epsilon, edge_rng);
    noisy_m = std::max(0.0, noisy_m);
    clock.end();

    clock.begin("two_stars");
    double two_stars = 0.0;
    for (int u = 0; u < n; ++u) {
        double d = static_cast<double>(g.degree(u));
        two_stars += d * (d - 1.0) / 2.0;
    }
    Rng star_rng = Rng(seed).derive("two_stars");
    {
        const auto& stage = record.ledger.stage("two_stars");
        PrivacyBudget stage_budget{stage.epsilon, stage.delta};
        double beta = smooth_beta(stage_budget);
        auto local_fn = [&](int t) { return 2.0 * std::min<double>(d_max + t, std::max(0, n - 1)); };
        SensitivityBound bound =
            smooth_sensitivity_upper_bound(local_fn, beta, n, 2.0 * std::max(0, n - 1));
        two_stars = std::max(0.0, two_stars + smooth_noise(bound, stage_budget, star_rng));
        record.summaries["two_star_bound"] = bound.value;
    }
    clock.end();

    clock.begin("triangles");
    double triangles = static_cast<double>(q_triangles(g));
    Rng tri_rng = Rng(seed).derive("triangles");
    {
        const auto& stage = record.ledger.stage("triangles");
        PrivacyBudget stage_budget{stage.epsilon, stage.delta};
        double beta = smooth_beta(stage_budget);
        auto local_fn = [&](int t) { return std::min<double>(d_max + t, std::max(0, n - 2)); };
        SensitivityBound bound =
            smooth_sensitivity_upper_bound(local_fn, beta, n, static_cast<double>(std::max(0, n - 2)));
        triangles = std::max(0.0, triangles + smooth_noise(bound, stage_budget, tri_rng));
        record.summaries["triangle_bound"] = bound.value;
    }
    clock.end();

    record.summaries["noisy_edges"] = noisy_m;
    record.summaries["noisy_two_stars"] = two_stars;
    record.summaries["noisy_triangles"] = triangles;

    clock.begin("fit");
    int levels = 0;
    while ((1LL << levels) < std::max(n, 1)) ++levels;
    FitResult fit = fit_initiator(noisy_m, two_stars, triangles, levels);
    if (fit.at_boundary) {
        record.warnings.push_back("initiator fit hit the [0,1] box boundary; parameters clamped");
    }
    record.summaries["theta_a"] = fit.theta[0];
    record.summaries["theta_b"] = fit.theta[1];
    record.summaries["theta_c"] = fit.theta[2];
    record.summaries["fit_objective"] = fit.objective;
    clock.end();

    clock.begin("sample");
    KroneckerInitiator init{fit.theta[0], fit.theta[1], fit.theta[2], levels};
    Rng sample_rng = Rng(seed).derive("sample");
    record.output = sample_kronecker(init, n, sample_rng);
    clock.end();
    return record;
}

} // namespace pgb
