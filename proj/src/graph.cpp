#include "pgb/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <unordered_map>

namespace pgb {

Graph::Graph(int n, std::vector<Edge> edges) : n_(n) {
    if (n < 0) throw std::invalid_argument("graph: negative node count");
    for (auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("graph: endpoint out of range");
        if (u > v) std::swap(u, v);
    }
    std::erase_if(edges, [](const Edge& e) { return e.first == e.second; });
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    adj_.assign(static_cast<std::size_t>(n), {});
    for (const auto& [u, v] : edges_) {
        adj_[static_cast<std::size_t>(u)].push_back(v);
        adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    // already sorted per node because edges_ is lexicographically sorted,
    // except for the reverse direction inserts
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
}

bool Graph::has_edge(int u, int v) const {
    if (u == v) return false;
    const auto& nb = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(nb.begin(), nb.end(), v);
}

LoadedGraph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open edge list: " + path);

    std::unordered_map<long long, int> relabel;
    std::vector<long long> original_ids;
    std::vector<Edge> edges;

    auto intern = [&](long long label) {
        auto [it, inserted] = relabel.try_emplace(label, static_cast<int>(original_ids.size()));
        if (inserted) original_ids.push_back(label);
        return it->second;
    };

    std::string line;
    std::size_t lineno = 0;
    bool saw_data = false;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t i = 0;
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size() || line[i] == '#') continue;

        long long tok[2];
        int ntok = 0;
        while (i < line.size() && ntok < 2) {
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            try {
                std::size_t consumed = 0;
                tok[ntok] = std::stoll(line.substr(i, j - i), &consumed);
                if (consumed != j - i) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw ParseError(path + ":" + std::to_string(lineno) + ": expected integer token");
            }
            ++ntok;
            i = j;
            while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        }
        if (ntok != 2)
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected two integer tokens");
        saw_data = true;
        int u = intern(tok[0]);
        int v = intern(tok[1]);
        if (u != v) edges.emplace_back(u, v);
    }
    if (!saw_data) throw ParseError(path + ": empty edge list");

    return LoadedGraph{Graph(static_cast<int>(original_ids.size()), std::move(edges)),
                       std::move(original_ids)};
}

void write_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write edge list: " + path);
    for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
    if (!out) throw std::runtime_error("write failed: " + path);
}

Graph generate_er(int n, long long m_target, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("generate_er: negative n");
    long long max_m = static_cast<long long>(n) * (n - 1) / 2;
    if (m_target < 0 || m_target > max_m)
        throw std::invalid_argument("generate_er: m_target out of range");
    if (n < 2 || m_target == 0) return Graph::empty(n);

    double p = 2.0 * static_cast<double>(m_target) /
               (static_cast<double>(n) * (static_cast<double>(n) - 1.0));
    std::vector<Edge> edges;
    if (p >= 1.0) {
        edges.reserve(static_cast<std::size_t>(max_m));
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
        return Graph(n, std::move(edges));
    }

    // Skip-sample the n(n-1)/2 pair indices with Bernoulli(p).
    Rng rng(seed);
    edges.reserve(static_cast<std::size_t>(m_target + m_target / 8 + 16));
    long long idx = -1;
    while (true) {
        idx += 1 + static_cast<long long>(rng.geometric_skip(p));
        if (idx >= max_m) break;
        // unrank idx -> (u, v), u < v
        double nn = static_cast<double>(n);
        double disc = (2.0 * nn - 1.0) * (2.0 * nn - 1.0) - 8.0 * static_cast<double>(idx);
        int u = static_cast<int>(std::floor(((2.0 * nn - 1.0) - std::sqrt(disc)) / 2.0));
        auto offset = [n](long long i) { return i * (2LL * n - i - 1) / 2; };
        while (u > 0 && offset(u) > idx) --u;
        while (offset(u + 1) <= idx) ++u;
        int v = static_cast<int>(idx - offset(u)) + u + 1;
        edges.emplace_back(u, v);
    }
    return Graph(n, std::move(edges));
}

Graph generate_ba(int n, int m_per_node, std::uint64_t seed) {
    if (m_per_node < 1 || m_per_node >= n)
        throw std::invalid_argument("generate_ba: need 1 <= m_per_node < n");

    Rng rng(seed);
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m_per_node) * static_cast<std::size_t>(n - m_per_node));
    std::vector<int> urn; // endpoint repeated once per incident edge
    urn.reserve(edges.capacity() * 2);

    std::vector<int> targets(static_cast<std::size_t>(m_per_node));
    for (int i = 0; i < m_per_node; ++i) targets[static_cast<std::size_t>(i)] = i;

    for (int v = m_per_node; v < n; ++v) {
        for (int t : targets) {
            edges.emplace_back(t, v);
            urn.push_back(t);
            urn.push_back(v);
        }
        // next targets: m distinct draws from the urn (preferential by degree)
        targets.clear();
        while (static_cast<int>(targets.size()) < m_per_node) {
            int cand = urn[rng.uniform_index(urn.size())];
            if (std::find(targets.begin(), targets.end(), cand) == targets.end())
                targets.push_back(cand);
        }
    }
    return Graph(n, std::move(edges));
}

std::vector<int> degree_sequence(const Graph& g) {
    std::vector<int> d(static_cast<std::size_t>(g.node_count()));
    for (int u = 0; u < g.node_count(); ++u) d[static_cast<std::size_t>(u)] = g.degree(u);
    return d;
}

double density(const Graph& g) {
    if (g.node_count() < 1) throw std::invalid_argument("density: empty node set");
    double n = static_cast<double>(g.node_count());
    return 2.0 * static_cast<double>(g.edge_count()) / (n * n);
}

} // namespace pgb
