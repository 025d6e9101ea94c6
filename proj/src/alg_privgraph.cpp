#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "pgb/constructors.hpp"
#include "pgb/louvain.hpp"
#include "pgb/synthesizers.hpp"
#include "synth_common.hpp"

namespace pgb {

namespace {

std::vector<int> relabel_contiguous(const std::vector<int>& labels) {
    int max_label = labels.empty() ? -1 : *std::max_element(labels.begin(), labels.end());
    std::vector<int> map(static_cast<std::size_t>(max_label + 1), -1);
    std::vector<int> out(labels.size());
    int next = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        int l = labels[i];
        if (map[static_cast<std::size_t>(l)] < 0) map[static_cast<std::size_t>(l)] = next++;
        out[i] = map[static_cast<std::size_t>(l)];
    }
    return out;
}

// Stage 1: random small blocks, Laplace-perturbed block-pair edge counts
// (sensitivity 1: an edge lands in exactly one block pair), Louvain on the
// noisy super-graph, then one exponential-mechanism refinement sweep with
// neighbor-count quality (sensitivity 1) and a per-node budget share.
std::vector<int> private_partition(const Graph& g, double eps_stage, int block_size, Rng& rng) {
    const int n = g.node_count();
    double eps_counts = eps_stage / 2.0;
    double eps_refine = eps_stage / 2.0;

    std::vector<int> node_order(static_cast<std::size_t>(n));
    std::iota(node_order.begin(), node_order.end(), 0);
    rng.shuffle(node_order);

    int bsize = std::max(1, block_size);
    int n_blocks = (n + bsize - 1) / bsize;
    std::vector<int> block_of(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        block_of[static_cast<std::size_t>(node_order[static_cast<std::size_t>(i)])] = i / bsize;

    // observed block-pair counts
    std::vector<std::vector<double>> counts(static_cast<std::size_t>(n_blocks));
    for (int b = 0; b < n_blocks; ++b)
        counts[static_cast<std::size_t>(b)].assign(static_cast<std::size_t>(n_blocks - b), 0.0);
    for (const auto& [u, v] : g.edges()) {
        int bu = block_of[static_cast<std::size_t>(u)], bv = block_of[static_cast<std::size_t>(v)];
        if (bu > bv) std::swap(bu, bv);
        counts[static_cast<std::size_t>(bu)][static_cast<std::size_t>(bv - bu)] += 1.0;
    }

    WeightedGraph super;
    super.n = n_blocks;
    super.adj.assign(static_cast<std::size_t>(n_blocks), {});
    super.self_weight.assign(static_cast<std::size_t>(n_blocks), 0.0);
    auto count_sens = SensitivityBound::global(1.0);
    for (int bu = 0; bu < n_blocks; ++bu) {
        for (int bv = bu; bv < n_blocks; ++bv) {
            double noisy = counts[static_cast<std::size_t>(bu)][static_cast<std::size_t>(bv - bu)] +
                           laplace_noise(count_sens, eps_counts, rng);
            double w = std::round(noisy);
            if (w > 0.0) super.add_edge(bu, bv, w);
        }
    }

    std::vector<int> block_comm = louvain(super, rng.next_u64());
    std::vector<int> community(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u)
        community[static_cast<std::size_t>(u)] = block_comm[static_cast<std::size_t>(block_of[static_cast<std::size_t>(u)])];

    // refinement sweep
    double eps_per_node = eps_refine / std::max(1, n);
    std::vector<int> sweep(static_cast<std::size_t>(n));
    std::iota(sweep.begin(), sweep.end(), 0);
    rng.shuffle(sweep);
    std::vector<int> candidates;
    std::vector<double> quality;
    for (int u : sweep) {
        candidates.clear();
        candidates.push_back(community[static_cast<std::size_t>(u)]);
        for (int v : g.neighbors(u)) candidates.push_back(community[static_cast<std::size_t>(v)]);
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        if (candidates.size() == 1) continue;
        quality.assign(candidates.size(), 0.0);
        for (int v : g.neighbors(u)) {
            auto it = std::lower_bound(candidates.begin(), candidates.end(),
                                       community[static_cast<std::size_t>(v)]);
            if (it != candidates.end() && *it == community[static_cast<std::size_t>(v)])
                quality[static_cast<std::size_t>(it - candidates.begin())] += 1.0;
        }
        std::size_t pick = exponential_select(quality, 1.0, eps_per_node, rng);
        community[static_cast<std::size_t>(u)] = candidates[pick];
    }
    return relabel_contiguous(community);
}

} // namespace

// PrivGraph: a private community partition, Laplace-perturbed intra-community
// degree sequences (L1 sensitivity 2) and inter-community edge counts
// (sensitivity 1; intra and inter counts touch disjoint edges), then
// Chung-Lu wiring inside each community and uniform sampling of the
// cross-community edges.
SynthesisRecord privgraph_generate(const Graph& g, const PrivacyBudget& budget, std::uint64_t seed,
                                   const AlgorithmConfig& cfg) {
    budget.validate();
    const int n = g.node_count();
    if (n < 2) throw std::invalid_argument("PrivGraph requires at least two nodes");

    SynthesisRecord record;
    record.ledger =
        split_budget(budget, synth_detail::resolve_split(Algorithm::PrivGraph, cfg.budget_split));
    synth_detail::StageClock clock(record);

    clock.begin("community");
    std::vector<int> community;
    if (cfg.privgraph_single_community) {
        community.assign(static_cast<std::size_t>(n), 0);
        record.summaries["forced_single_community"] = 1.0;
    } else {
        Rng comm_rng = Rng(seed).derive("community");
        community = private_partition(g, record.ledger.stage("community").epsilon,
                                      cfg.privgraph_block_size, comm_rng);
    }
    int n_comm = *std::max_element(community.begin(), community.end()) + 1;
    record.summaries["communities"] = static_cast<double>(n_comm);
    clock.end();

    std::vector<std::vector<int>> members(static_cast<std::size_t>(n_comm));
    for (int u = 0; u < n; ++u)
        members[static_cast<std::size_t>(community[static_cast<std::size_t>(u)])].push_back(u);

    clock.begin("intra_degrees");
    Rng intra_rng = Rng(seed).derive("intra_degrees");
    double eps_intra = record.ledger.stage("intra_degrees").epsilon;
    std::vector<double> intra_degree(static_cast<std::size_t>(n), 0.0);
    for (const auto& [u, v] : g.edges()) {
        if (community[static_cast<std::size_t>(u)] == community[static_cast<std::size_t>(v)]) {
            intra_degree[static_cast<std::size_t>(u)] += 1.0;
            intra_degree[static_cast<std::size_t>(v)] += 1.0;
        }
    }
    auto intra_sens = SensitivityBound::global(2.0);
    for (int u = 0; u < n; ++u) {
        double noisy = intra_degree[static_cast<std::size_t>(u)] +
                       laplace_noise(intra_sens, eps_intra, intra_rng);
        double cap = static_cast<double>(
            members[static_cast<std::size_t>(community[static_cast<std::size_t>(u)])].size() - 1);
        intra_degree[static_cast<std::size_t>(u)] = std::clamp(std::round(noisy), 0.0, std::max(0.0, cap));
    }
    clock.end();

    clock.begin("inter_edges");
    Rng inter_rng = Rng(seed).derive("inter_edges");
    double eps_inter = record.ledger.stage("inter_edges").epsilon;
    std::vector<std::vector<long long>> inter(static_cast<std::size_t>(n_comm));
    for (int c = 0; c < n_comm; ++c)
        inter[static_cast<std::size_t>(c)].assign(static_cast<std::size_t>(n_comm - c), 0);
    for (const auto& [u, v] : g.edges()) {
        int cu = community[static_cast<std::size_t>(u)], cv = community[static_cast<std::size_t>(v)];
        if (cu == cv) continue;
        if (cu > cv) std::swap(cu, cv);
        inter[static_cast<std::size_t>(cu)][static_cast<std::size_t>(cv - cu)] += 1;
    }
    auto inter_sens = SensitivityBound::global(1.0);
    for (int cu = 0; cu < n_comm; ++cu) {
        for (int cv = cu + 1; cv < n_comm; ++cv) {
            long long cross_pairs =
                static_cast<long long>(members[static_cast<std::size_t>(cu)].size()) *
                static_cast<long long>(members[static_cast<std::size_t>(cv)].size());
            double noisy = static_cast<double>(inter[static_cast<std::size_t>(cu)][static_cast<std::size_t>(cv - cu)]) +
                           laplace_noise(inter_sens, eps_inter, inter_rng);
            inter[static_cast<std::size_t>(cu)][static_cast<std::size_t>(cv - cu)] =
                std::clamp<long long>(std::llround(noisy), 0, cross_pairs);
        }
    }
    clock.end();

    clock.begin("construct");
    Rng construct_rng = Rng(seed).derive("construct");
    std::vector<Edge> edges;
    for (int c = 0; c < n_comm; ++c) {
        const auto& mem = members[static_cast<std::size_t>(c)];
        if (mem.size() < 2) continue;
        std::vector<double> weights(mem.size());
        for (std::size_t i = 0; i < mem.size(); ++i)
            weights[i] = intra_degree[static_cast<std::size_t>(mem[i])];
        Graph local = construct_chung_lu(weights, construct_rng);
        for (const auto& [lu, lv] : local.edges())
            edges.emplace_back(mem[static_cast<std::size_t>(lu)], mem[static_cast<std::size_t>(lv)]);
    }
    for (int cu = 0; cu < n_comm; ++cu) {
        const auto& mu = members[static_cast<std::size_t>(cu)];
        for (int cv = cu + 1; cv < n_comm; ++cv) {
            const auto& mv = members[static_cast<std::size_t>(cv)];
            long long want = inter[static_cast<std::size_t>(cu)][static_cast<std::size_t>(cv - cu)];
            if (want <= 0) continue;
            long long cross_pairs = static_cast<long long>(mu.size()) * static_cast<long long>(mv.size());
            auto emit = [&](long long pick) {
                edges.emplace_back(mu[static_cast<std::size_t>(pick / static_cast<long long>(mv.size()))],
                                   mv[static_cast<std::size_t>(pick % static_cast<long long>(mv.size()))]);
            };
            if (2 * want > cross_pairs) {
                // dense request: pick a uniform subset by shuffling all pairs
                std::vector<long long> pairs(static_cast<std::size_t>(cross_pairs));
                std::iota(pairs.begin(), pairs.end(), 0LL);
                construct_rng.shuffle(pairs);
                for (long long i = 0; i < want; ++i) emit(pairs[static_cast<std::size_t>(i)]);
            } else {
                std::unordered_set<long long> chosen;
                while (static_cast<long long>(chosen.size()) < want) {
                    long long pick = static_cast<long long>(
                        construct_rng.uniform_index(static_cast<std::uint64_t>(cross_pairs)));
                    if (chosen.insert(pick).second) emit(pick);
                }
            }
        }
    }
    record.output = Graph(n, std::move(edges));
    clock.end();

    record.summaries["output_m"] = static_cast<double>(record.output.edge_count());
    return record;
}

} // namespace pgb
