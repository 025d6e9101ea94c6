#include <numeric>

#include "pgb/constructors.hpp"
#include "pgb/synthesizers.hpp"
#include "synth_common.hpp"

namespace pgb {

// DGG: perturb the degree sequence with Laplace noise and rebuild with BTER.
// One edge changes two degrees by one, so the sequence has L1 sensitivity 2.
SynthesisRecord dgg_generate(const Graph& g, const PrivacyBudget& budget, std::uint64_t seed,
                             const AlgorithmConfig& cfg) {
    budget.validate();
    SynthesisRecord record;
    record.ledger = split_budget(budget, synth_detail::resolve_split(Algorithm::Dgg, cfg.budget_split));
    synth_detail::StageClock clock(record);

    const double eps = record.ledger.stage("degrees").epsilon;
    Rng root(seed);
    Rng noise_rng = root.derive("degrees");

    clock.begin("degrees");
    std::vector<int> degrees = degree_sequence(g);
    std::vector<double> noisy(degrees.size());
    auto sens = SensitivityBound::global(2.0);
    for (std::size_t i = 0; i < degrees.size(); ++i)
        noisy[i] = static_cast<double>(degrees[i]) + laplace_noise(sens, eps, noise_rng);
    std::vector<int> repaired = repair_degree_sequence(noisy, g.node_count());
    clock.end();

    clock.begin("construct");
    Rng construct_rng = root.derive("construct");
    record.output = construct_bter(repaired, cfg.bter_target_acc, construct_rng);
    clock.end();

    record.summaries["noisy_degree_sum"] =
        static_cast<double>(std::accumulate(repaired.begin(), repaired.end(), 0LL));
    record.summaries["bter_target_acc"] = cfg.bter_target_acc;
    record.repaired_degrees = std::move(repaired);
    return record;
}

} // namespace pgb
