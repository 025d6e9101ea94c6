#include "pgb/louvain.hpp"

#include <algorithm>
#include <numeric>

#include "pgb/rng.hpp"

namespace pgb {

WeightedGraph WeightedGraph::from_graph(const Graph& g) {
    WeightedGraph w;
    w.n = g.node_count();
    w.adj.assign(static_cast<std::size_t>(w.n), {});
    w.self_weight.assign(static_cast<std::size_t>(w.n), 0.0);
    for (const auto& [u, v] : g.edges()) w.add_edge(u, v, 1.0);
    return w;
}

void WeightedGraph::add_edge(int u, int v, double w) {
    if (u == v) {
        self_weight[static_cast<std::size_t>(u)] += w;
        return;
    }
    adj[static_cast<std::size_t>(u)].emplace_back(v, w);
    adj[static_cast<std::size_t>(v)].emplace_back(u, w);
}

double WeightedGraph::total_weight() const {
    double sum = 0.0;
    for (const auto& nb : adj)
        for (const auto& [v, w] : nb) sum += w; // both directions stored
    return sum / 2.0 + std::accumulate(self_weight.begin(), self_weight.end(), 0.0);
}

namespace {

// One local-moving level. Returns community labels (not yet contiguous) and
// whether any node moved.
bool local_moving(const WeightedGraph& g, double two_m, std::vector<int>& community, Rng& rng) {
    const int n = g.n;
    std::vector<double> strength(static_cast<std::size_t>(n), 0.0); // weighted degree
    for (int u = 0; u < n; ++u) {
        double s = 2.0 * g.self_weight[static_cast<std::size_t>(u)];
        for (const auto& [v, w] : g.adj[static_cast<std::size_t>(u)]) s += w;
        strength[static_cast<std::size_t>(u)] = s;
    }
    std::vector<double> community_total(static_cast<std::size_t>(n), 0.0);
    for (int u = 0; u < n; ++u)
        community_total[static_cast<std::size_t>(community[static_cast<std::size_t>(u)])] +=
            strength[static_cast<std::size_t>(u)];

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    std::vector<double> link_to(static_cast<std::size_t>(n), 0.0);
    std::vector<int> touched;
    bool moved_any = false;
    bool improved = true;
    while (improved) {
        improved = false;
        for (int u : order) {
            int cu = community[static_cast<std::size_t>(u)];
            touched.clear();
            for (const auto& [v, w] : g.adj[static_cast<std::size_t>(u)]) {
                int cv = community[static_cast<std::size_t>(v)];
                if (link_to[static_cast<std::size_t>(cv)] == 0.0) touched.push_back(cv);
                link_to[static_cast<std::size_t>(cv)] += w;
            }
            double ku = strength[static_cast<std::size_t>(u)];
            community_total[static_cast<std::size_t>(cu)] -= ku;

            // gain of joining community c: link_to[c] - ku * tot_c / 2m
            int best_c = cu;
            double best_gain = link_to[static_cast<std::size_t>(cu)] -
                               ku * community_total[static_cast<std::size_t>(cu)] / two_m;
            for (int c : touched) {
                if (c == cu) continue;
                double gain = link_to[static_cast<std::size_t>(c)] -
                              ku * community_total[static_cast<std::size_t>(c)] / two_m;
                if (gain > best_gain + 1e-12) {
                    best_gain = gain;
                    best_c = c;
                }
            }
            community_total[static_cast<std::size_t>(best_c)] += ku;
            if (best_c != cu) {
                community[static_cast<std::size_t>(u)] = best_c;
                improved = true;
                moved_any = true;
            }
            for (int c : touched) link_to[static_cast<std::size_t>(c)] = 0.0;
            link_to[static_cast<std::size_t>(cu)] = 0.0;
        }
    }
    return moved_any;
}

std::vector<int> relabel_contiguous(const std::vector<int>& labels) {
    std::vector<int> map(labels.size(), -1);
    std::vector<int> out(labels.size());
    int next = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        int l = labels[i];
        if (map[static_cast<std::size_t>(l)] < 0) map[static_cast<std::size_t>(l)] = next++;
        out[i] = map[static_cast<std::size_t>(l)];
    }
    return out;
}

WeightedGraph aggregate(const WeightedGraph& g, const std::vector<int>& community, int n_comm) {
    WeightedGraph agg;
    agg.n = n_comm;
    agg.adj.assign(static_cast<std::size_t>(n_comm), {});
    agg.self_weight.assign(static_cast<std::size_t>(n_comm), 0.0);
    std::vector<std::vector<std::pair<int, double>>> rows(static_cast<std::size_t>(n_comm));
    for (int u = 0; u < g.n; ++u) {
        int cu = community[static_cast<std::size_t>(u)];
        agg.self_weight[static_cast<std::size_t>(cu)] += g.self_weight[static_cast<std::size_t>(u)];
        for (const auto& [v, w] : g.adj[static_cast<std::size_t>(u)]) {
            int cv = community[static_cast<std::size_t>(v)];
            if (cu == cv) {
                if (u < v) agg.self_weight[static_cast<std::size_t>(cu)] += w;
            } else if (cu < cv) {
                rows[static_cast<std::size_t>(cu)].emplace_back(cv, w);
            }
        }
    }
    for (int c = 0; c < n_comm; ++c) {
        auto& row = rows[static_cast<std::size_t>(c)];
        std::sort(row.begin(), row.end());
        std::size_t i = 0;
        while (i < row.size()) {
            std::size_t j = i;
            double w = 0.0;
            while (j < row.size() && row[j].first == row[i].first) w += row[j++].second;
            agg.add_edge(c, row[i].first, w);
            i = j;
        }
    }
    return agg;
}

} // namespace

std::vector<int> louvain(const WeightedGraph& g, std::uint64_t seed) {
    std::vector<int> result(static_cast<std::size_t>(g.n));
    std::iota(result.begin(), result.end(), 0);
    double two_m = 2.0 * g.total_weight();
    if (two_m <= 0.0) return result; // edgeless: singletons

    Rng rng(mix_seed(seed, "louvain"));
    WeightedGraph level = g;
    std::vector<int> node_to_comm = result; // composition across levels
    for (int depth = 0; depth < 64; ++depth) {
        std::vector<int> community(static_cast<std::size_t>(level.n));
        std::iota(community.begin(), community.end(), 0);
        bool moved = local_moving(level, two_m, community, rng);
        if (!moved) break;
        community = relabel_contiguous(community);
        int n_comm = *std::max_element(community.begin(), community.end()) + 1;
        for (auto& c : node_to_comm) c = community[static_cast<std::size_t>(c)];
        if (n_comm == level.n) break;
        level = aggregate(level, community, n_comm);
    }
    return relabel_contiguous(node_to_comm);
}

std::vector<int> louvain(const Graph& g, std::uint64_t seed) {
    return louvain(WeightedGraph::from_graph(g), seed);
}

} // namespace pgb
