#ifndef PGB_LOUVAIN_HPP
#define PGB_LOUVAIN_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "pgb/graph.hpp"

namespace pgb {

/// Weighted undirected multigraph used for Louvain aggregation levels and for
/// noisy super-graphs. self_weight[u] counts a self-loop's full weight once.
struct WeightedGraph {
    int n = 0;
    std::vector<std::vector<std::pair<int, double>>> adj; // both directions stored
    std::vector<double> self_weight;

    static WeightedGraph from_graph(const Graph& g);
    void add_edge(int u, int v, double w);
    double total_weight() const; // sum of edge weights incl. self loops
};

/// Louvain modularity maximization at resolution 1.0. Node sweep order is a
/// seeded shuffle, so the result is deterministic for a fixed seed. Returns
/// contiguous community labels starting at 0. Edgeless input puts every node
/// in its own community.
std::vector<int> louvain(const WeightedGraph& g, std::uint64_t seed);
std::vector<int> louvain(const Graph& g, std::uint64_t seed);

} // namespace pgb

#endif
