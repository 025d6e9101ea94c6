#include "pgb/synthesizers.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace pgb {

std::string algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::DpDk: return "DP-dK";
        case Algorithm::Tmf: return "TmF";
        case Algorithm::PrivSkg: return "PrivSKG";
        case Algorithm::PrivHrg: return "PrivHRG";
        case Algorithm::PrivGraph: return "PrivGraph";
        case Algorithm::Dgg: return "DGG";
    }
    throw std::invalid_argument("unknown algorithm");
}

Algorithm parse_algorithm(const std::string& text) {
    std::string t;
    for (char c : text)
        if (std::isalnum(static_cast<unsigned char>(c)))
            t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (t == "dpdk") return Algorithm::DpDk;
    if (t == "tmf") return Algorithm::Tmf;
    if (t == "privskg") return Algorithm::PrivSkg;
    if (t == "privhrg") return Algorithm::PrivHrg;
    if (t == "privgraph") return Algorithm::PrivGraph;
    if (t == "dgg") return Algorithm::Dgg;
    throw std::invalid_argument("unknown algorithm: " + text);
}

bool requires_delta(Algorithm a) { return a == Algorithm::DpDk || a == Algorithm::PrivSkg; }

std::vector<std::pair<std::string, double>> default_budget_split(Algorithm a) {
    switch (a) {
        case Algorithm::DpDk: return {{"jdm", 1.0}};
        case Algorithm::Tmf: return {{"edge_count", 0.1}, {"cells", 0.9}};
        case Algorithm::PrivSkg: return {{"edges", 0.2}, {"two_stars", 0.4}, {"triangles", 0.4}};
        case Algorithm::PrivHrg: return {{"dendrogram_mcmc", 0.5}, {"edge_counts", 0.5}};
        case Algorithm::PrivGraph:
            return {{"community", 1.0 / 3.0}, {"intra_degrees", 1.0 / 3.0}, {"inter_edges", 1.0 / 3.0}};
        case Algorithm::Dgg: return {{"degrees", 1.0}};
    }
    throw std::invalid_argument("unknown algorithm");
}

namespace synth_detail {

std::vector<std::pair<std::string, double>> resolve_split(Algorithm a,
                                                          const std::vector<double>& override_split) {
    auto shares = default_budget_split(a);
    if (override_split.empty()) return shares;
    if (override_split.size() != shares.size())
        throw std::invalid_argument("budget split for " + algorithm_name(a) + " needs " +
                                    std::to_string(shares.size()) + " fractions");
    for (std::size_t i = 0; i < shares.size(); ++i) shares[i].second = override_split[i];
    return shares;
}

} // namespace synth_detail

SynthesisRecord generate(Algorithm alg, const Graph& g, const PrivacyBudget& budget,
                         std::uint64_t seed, const AlgorithmConfig& cfg) {
    switch (alg) {
        case Algorithm::DpDk: return dpdk_generate(g, budget, seed, cfg);
        case Algorithm::Tmf: return tmf_generate(g, budget, seed, cfg);
        case Algorithm::PrivSkg: return privskg_generate(g, budget, seed, cfg);
        case Algorithm::PrivHrg: return privhrg_generate(g, budget, seed, cfg);
        case Algorithm::PrivGraph: return privgraph_generate(g, budget, seed, cfg);
        case Algorithm::Dgg: return dgg_generate(g, budget, seed, cfg);
    }
    throw std::invalid_argument("unknown algorithm");
}

} // namespace pgb
