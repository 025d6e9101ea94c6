#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "pgb/constructors.hpp"
#include "pgb/synthesizers.hpp"
#include "synth_common.hpp"

namespace pgb {

namespace {

// P[center + Lap(b) > theta]
double laplace_tail_above(double center, double b, double theta) {
    if (theta <= center) return 1.0 - 0.5 * std::exp((theta - center) / b);
    return 0.5 * std::exp(-(theta - center) / b);
}

// Threshold such that the expected number of passing cells equals target:
// m_true 1-cells pass with P[1 + Lap > theta], the zero cells with
// P[Lap > theta]. The expectation is monotone decreasing in theta.
double solve_threshold(double m_true, double zero_cells, double b, double target) {
    double lo = -1.0 - 60.0 * b;
    double hi = 2.0 + 60.0 * b;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double expected = m_true * laplace_tail_above(1.0, b, mid) +
                          zero_cells * laplace_tail_above(0.0, b, mid);
        if (expected > target) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

// TmF: noisy edge count, then a conceptual Laplace perturbation of every
// upper-triangular adjacency cell. The top noisy cells are selected through a
// high-pass threshold so the n^2 cells are never materialized: 1-cells pass a
// Bernoulli test, 0-cells are drawn by skip sampling over the pair indices.
SynthesisRecord tmf_generate(const Graph& g, const PrivacyBudget& budget, std::uint64_t seed,
                             const AlgorithmConfig& cfg) {
    budget.validate();
    SynthesisRecord record;
    record.ledger = split_budget(budget, synth_detail::resolve_split(Algorithm::Tmf, cfg.budget_split));
    synth_detail::StageClock clock(record);

    const int n = g.node_count();
    const long long total_cells = static_cast<long long>(n) * (n - 1) / 2;
    const double m_true = static_cast<double>(g.edge_count());

    clock.begin("edge_count");
    Rng count_rng = Rng(seed).derive("edge_count");
    double eps1 = record.ledger.stage("edge_count").epsilon;
    long long noisy_m =
        std::llround(m_true + laplace_noise(SensitivityBound::global(1.0), eps1, count_rng));
    noisy_m = std::clamp<long long>(noisy_m, 0, total_cells);
    clock.end();

    record.summaries["noisy_m"] = static_cast<double>(noisy_m);

    clock.begin("cells");
    Rng cell_rng = Rng(seed).derive("cells");
    std::vector<Edge> edges;
    if (noisy_m >= total_cells) {
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    } else if (noisy_m > 0) {
        double eps2 = record.ledger.stage("cells").epsilon;
        double b = 1.0 / eps2;
        double zero_cells = static_cast<double>(total_cells) - m_true;
        double theta = solve_threshold(m_true, zero_cells, b, static_cast<double>(noisy_m));
        double p_one = laplace_tail_above(1.0, b, theta);
        double p_zero = laplace_tail_above(0.0, b, theta);
        record.summaries["threshold"] = theta;
        record.summaries["pass_prob_edge"] = p_one;
        record.summaries["pass_prob_nonedge"] = p_zero;

        for (const auto& e : g.edges())
            if (cell_rng.bernoulli(p_one)) edges.push_back(e);

        if (p_zero > 0.0) {
            // Bernoulli(p_zero) over all pair indices; hits on true edges are
            // discarded (those cells are handled above)
            long long idx = -1;
            while (true) {
                idx += 1 + static_cast<long long>(cell_rng.geometric_skip(p_zero));
                if (idx >= total_cells) break;
                double nn = static_cast<double>(n);
                double disc = (2.0 * nn - 1.0) * (2.0 * nn - 1.0) - 8.0 * static_cast<double>(idx);
                int u = static_cast<int>(std::floor(((2.0 * nn - 1.0) - std::sqrt(disc)) / 2.0));
                auto offset = [n](long long i) { return i * (2LL * n - i - 1) / 2; };
                while (u > 0 && offset(u) > idx) --u;
                while (offset(u + 1) <= idx) ++u;
                int v = static_cast<int>(idx - offset(u)) + u + 1;
                if (!g.has_edge(u, v)) edges.emplace_back(u, v);
            }
        }
    }
    record.output = Graph(n, std::move(edges));
    clock.end();

    record.summaries["output_m"] = static_cast<double>(record.output.edge_count());
    return record;
}

} // namespace pgb
