#ifndef PGB_GRAPH_HPP
#define PGB_GRAPH_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pgb/rng.hpp"

namespace pgb {

using Edge = std::pair<int, int>;

/// Undirected simple graph with contiguous node IDs 0..n-1.
///
/// Edges are stored once with u < v in lexicographic order; adjacency lists
/// are sorted. Immutable after construction, so instances can be shared
/// freely across concurrent benchmark cells.
class Graph {
public:
    Graph() = default;

    /// Normalizing constructor: drops self-loops, merges duplicate and
    /// reversed edges, orients pairs u < v. Throws if an endpoint is outside
    /// [0, n).
    Graph(int n, std::vector<Edge> edges);

    static Graph empty(int n) { return Graph(n, {}); }

    int node_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }

    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int u) const { return adj_[static_cast<std::size_t>(u)]; }
    int degree(int u) const { return static_cast<int>(adj_[static_cast<std::size_t>(u)].size()); }
    bool has_edge(int u, int v) const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LoadedGraph {
    Graph graph;
    /// original_ids[i] = node label in the source file that became ID i
    /// (first-appearance order).
    std::vector<long long> original_ids;
};

/// Reads a whitespace-separated edge list ('#' starts a comment line).
/// Node labels are relabeled to 0..n-1 in first-appearance order; self-loops
/// and duplicate/reversed edges are dropped.
LoadedGraph load_edge_list(const std::string& path);

/// Canonical dump: one "u v" line per edge, u < v, lexicographic order.
/// Round-trips bit-exactly through load_edge_list.
void write_edge_list(const Graph& g, const std::string& path);

/// G(n, p) with p chosen so the expected edge count equals m_target.
Graph generate_er(int n, long long m_target, std::uint64_t seed);

/// Preferential attachment; each new node attaches to m_per_node existing
/// nodes drawn from a repeated-endpoint urn. m = m_per_node * (n - m_per_node).
Graph generate_ba(int n, int m_per_node, std::uint64_t seed);

std::vector<int> degree_sequence(const Graph& g);

/// 2|E| / |V|^2.
double density(const Graph& g);

} // namespace pgb

#endif
