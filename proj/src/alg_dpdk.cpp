#include <algorithm>
#include <cmath>

#include "pgb/constructors.hpp"
#include "pgb/synthesizers.hpp"
#include "synth_common.hpp"

namespace pgb {

// DP-dK: perturb the dK-2 joint degree matrix and rebuild. Default noise is
// smooth-sensitivity calibrated; the fallback is Laplace at the global bound
// 4*d_max + 1 (in L1, one edge moves at most 2(d_u-1) + 2(d_v-1) endpoint
// cells plus its own cell). The smooth local bound at distance t allows the
// max degree to have grown by t.
SynthesisRecord dpdk_generate(const Graph& g, const PrivacyBudget& budget, std::uint64_t seed,
                              const AlgorithmConfig& cfg) {
    budget.validate();
    if (cfg.dpdk_noise == DpdkNoise::Smooth && budget.delta <= 0.0)
        throw std::invalid_argument("DP-dK smooth mode requires delta > 0");

    SynthesisRecord record;
    record.ledger = split_budget(budget, synth_detail::resolve_split(Algorithm::DpDk, cfg.budget_split));
    synth_detail::StageClock clock(record);

    const int n = g.node_count();
    int d_max = 0;
    for (int u = 0; u < n; ++u) d_max = std::max(d_max, g.degree(u));

    clock.begin("jdm");
    JointDegreeMatrix jdm = joint_degree_matrix(g);
    Rng noise_rng = Rng(seed).derive("jdm");
    const double eps = record.ledger.stage("jdm").epsilon;

    double noise_scale; // recorded for auditability
    JointDegreeMatrix noisy;
    if (cfg.dpdk_noise == DpdkNoise::Smooth) {
        PrivacyBudget stage_budget{eps, budget.delta};
        double beta = smooth_beta(stage_budget);
        double cap = 4.0 * std::max(0, n - 1) + 1.0;
        auto local_fn = [&](int t) {
            return 4.0 * std::min<double>(d_max + t, std::max(0, n - 1)) + 1.0;
        };
        SensitivityBound bound = smooth_sensitivity_upper_bound(local_fn, beta, n, cap);
        noise_scale = 2.0 * bound.value / eps;
        record.summaries["smooth_bound"] = bound.value;
        for (const auto& [cell, count] : jdm) {
            long long v = std::llround(static_cast<double>(count) +
                                       smooth_noise(bound, stage_budget, noise_rng));
            if (v > 0) noisy[cell] = v;
        }
    } else {
        SensitivityBound bound = SensitivityBound::global(4.0 * d_max + 1.0);
        noise_scale = bound.value / eps;
        for (const auto& [cell, count] : jdm) {
            long long v = std::llround(static_cast<double>(count) +
                                       laplace_noise(bound, eps, noise_rng));
            if (v > 0) noisy[cell] = v;
        }
    }
    record.summaries["noise_scale"] = noise_scale;
    record.summaries["jdm_cells"] = static_cast<double>(jdm.size());
    clock.end();

    clock.begin("construct");
    Rng construct_rng = Rng(seed).derive("construct");
    if (cfg.dpdk_constructor == DpdkConstructor::Dk2) {
        Dk2Result res = construct_dk2(noisy, construct_rng);
        if (res.placed_edges < res.requested_edges)
            record.warnings.push_back("dk2 stub matching left " +
                                      std::to_string(res.requested_edges - res.placed_edges) +
                                      " of " + std::to_string(res.requested_edges) +
                                      " edges unplaced");
        record.summaries["dk2_requested"] = static_cast<double>(res.requested_edges);
        record.summaries["dk2_placed"] = static_cast<double>(res.placed_edges);
        record.summaries["dk2_swaps"] = static_cast<double>(res.swap_attempts);
        record.output = std::move(res.graph);
    } else {
        // dK-1 fallback: realize the marginal degree histogram with
        // Havel-Hakimi; the noisy marginal may need a graphicality repair
        std::vector<int> degrees;
        for (const auto& [deg, count] : jdm_degree_histogram(noisy))
            for (long long i = 0; i < count; ++i) degrees.push_back(deg);
        std::sort(degrees.begin(), degrees.end(), std::greater<>());
        if (!is_graphical(degrees)) {
            degrees = make_graphical(std::move(degrees));
            record.warnings.push_back("noisy dK-1 marginal repaired to a graphical sequence");
        }
        record.output = construct_havel_hakimi(degrees);
        record.repaired_degrees = std::move(degrees);
    }
    clock.end();
    return record;
}

} // namespace pgb
