// Independent brute-force oracles used by the unit and acceptance suites.
// These deliberately avoid the library's algorithms: triple enumeration,
// Floyd-Warshall, direct formula evaluation.
#ifndef PGB_TEST_ORACLES_HPP
#define PGB_TEST_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "pgb/graph.hpp"
#include "pgb/rng.hpp"

namespace pgb::oracle {

inline Graph gnp(int n, double p, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.uniform() < p) edges.emplace_back(u, v);
    return Graph(n, std::move(edges));
}

inline long long triangles(const Graph& g) {
    long long count = 0;
    int n = g.node_count();
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                if (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) ++count;
    return count;
}

inline long long wedges(const Graph& g) {
    long long count = 0;
    int n = g.node_count();
    for (int center = 0; center < n; ++center)
        for (int a = 0; a < n; ++a) {
            if (a == center || !g.has_edge(center, a)) continue;
            for (int b = a + 1; b < n; ++b)
                if (b != center && g.has_edge(center, b)) ++count;
        }
    return count;
}

inline double acc(const Graph& g) {
    int n = g.node_count();
    double sum = 0.0;
    for (int v = 0; v < n; ++v) {
        int d = g.degree(v);
        if (d < 2) continue;
        long long closed = 0;
        const auto& nb = g.neighbors(v);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (g.has_edge(nb[i], nb[j])) ++closed;
        sum += 2.0 * static_cast<double>(closed) / (static_cast<double>(d) * (d - 1));
    }
    return sum / n;
}

/// All-pairs shortest paths via Floyd-Warshall; -1 encodes unreachable.
inline std::vector<std::vector<int>> all_pairs_distances(const Graph& g) {
    int n = g.node_count();
    const int kInf = std::numeric_limits<int>::max() / 4;
    std::vector<std::vector<int>> d(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n), kInf));
    for (int i = 0; i < n; ++i) d[i][i] = 0;
    for (const auto& [u, v] : g.edges()) {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    for (auto& row : d)
        for (auto& x : row)
            if (x >= kInf) x = -1;
    return d;
}

inline double assortativity(const Graph& g) {
    std::vector<double> xs, ys;
    for (const auto& [u, v] : g.edges()) {
        xs.push_back(g.degree(u)); ys.push_back(g.degree(v));
        xs.push_back(g.degree(v)); ys.push_back(g.degree(u));
    }
    double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) { mx += xs[i]; my += ys[i]; }
    mx /= n; my /= n;
    double cov = 0, vx = 0, vy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        cov += (xs[i] - mx) * (ys[i] - my);
        vx += (xs[i] - mx) * (xs[i] - mx);
        vy += (ys[i] - my) * (ys[i] - my);
    }
    return cov / std::sqrt(vx * vy);
}

inline double modularity(const Graph& g, const std::vector<int>& part) {
    double m = static_cast<double>(g.edge_count());
    int n = g.node_count();
    double q = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (part[static_cast<std::size_t>(i)] != part[static_cast<std::size_t>(j)]) continue;
            double a = g.has_edge(i, j) ? 1.0 : 0.0;
            q += a - static_cast<double>(g.degree(i)) * g.degree(j) / (2.0 * m);
        }
    return q / (2.0 * m);
}

/// Exact expected edge count of a 2x2 symmetric Kronecker initiator on the
/// first n nodes, by explicit per-level bit products (no popcount shortcut).
inline double kronecker_expected_edges(double a, double b, double c, int levels, int n) {
    double theta[2][2] = {{a, b}, {b, c}};
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double p = 1.0;
            for (int l = 0; l < levels; ++l) p *= theta[(i >> l) & 1][(j >> l) & 1];
            sum += p;
        }
    return sum;
}

} // namespace pgb::oracle

#endif
