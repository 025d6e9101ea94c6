#ifndef PGB_SYNTHESIZERS_HPP
#define PGB_SYNTHESIZERS_HPP

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pgb/dp.hpp"
#include "pgb/graph.hpp"

namespace pgb {

enum class Algorithm { DpDk, Tmf, PrivSkg, PrivHrg, PrivGraph, Dgg };

constexpr std::array<Algorithm, 6> all_algorithms = {Algorithm::DpDk,    Algorithm::Tmf,
                                                     Algorithm::PrivSkg, Algorithm::PrivHrg,
                                                     Algorithm::PrivGraph, Algorithm::Dgg};

/// Canonical names: DP-dK, TmF, PrivSKG, PrivHRG, PrivGraph, DGG.
std::string algorithm_name(Algorithm a);
Algorithm parse_algorithm(const std::string& text); // case/punctuation-insensitive

/// True for the algorithms whose noise is calibrated with smooth sensitivity
/// and therefore need delta > 0.
bool requires_delta(Algorithm a);

enum class DpdkConstructor { Dk2, Dk1HavelHakimi };
enum class DpdkNoise { Smooth, GlobalLaplace };

/// Per-algorithm knobs; every field has the benchmark default.
struct AlgorithmConfig {
    std::vector<double> budget_split; // empty = algorithm default

    DpdkConstructor dpdk_constructor = DpdkConstructor::Dk2;
    DpdkNoise dpdk_noise = DpdkNoise::Smooth;

    long long mcmc_max_steps = -1; // -1 = min(1e6, 200 n ceil(log2 n))

    int privgraph_block_size = 2;
    bool privgraph_single_community = false;

    double bter_target_acc = 0.3;
};

struct StageTiming {
    std::string label;
    double seconds = 0.0;
};

struct SynthesisRecord {
    Graph output;
    BudgetLedger ledger;
    std::vector<StageTiming> stage_timings;
    std::map<std::string, double> summaries;
    std::vector<std::string> warnings;
    /// Populated by the degree-sequence algorithms (DGG, DP-dK dK-1 path).
    std::optional<std::vector<int>> repaired_degrees;
};

SynthesisRecord dgg_generate(const Graph& g, const PrivacyBudget& budget, std::uint64_t seed,
                             const AlgorithmConfig& cfg = {});
SynthesisRecord tmf_generate(const Graph& g, const PrivacyBudget& budget, std::uint64_t seed,
                             const AlgorithmConfig& cfg = {});
SynthesisRecord dpdk_generate(const Graph& g, const PrivacyBudget& budget, std::uint64_t seed,
                              const AlgorithmConfig& cfg = {});
SynthesisRecord privskg_generate(const Graph& g, const PrivacyBudget& budget, std::uint64_t seed,
                                 const AlgorithmConfig& cfg = {});
SynthesisRecord privhrg_generate(const Graph& g, const PrivacyBudget& budget, std::uint64_t seed,
                                 const AlgorithmConfig& cfg = {});
SynthesisRecord privgraph_generate(const Graph& g, const PrivacyBudget& budget, std::uint64_t seed,
                                   const AlgorithmConfig& cfg = {});

/// Uniform dispatch.
SynthesisRecord generate(Algorithm alg, const Graph& g, const PrivacyBudget& budget,
                         std::uint64_t seed, const AlgorithmConfig& cfg = {});

/// Stage labels + default fractions for an algorithm's ledger.
std::vector<std::pair<std::string, double>> default_budget_split(Algorithm a);

namespace synth_detail {
/// Validates an override split against the stage template; returns the labeled
/// shares actually used.
std::vector<std::pair<std::string, double>> resolve_split(Algorithm a,
                                                          const std::vector<double>& override_split);
} // namespace synth_detail

} // namespace pgb

#endif
