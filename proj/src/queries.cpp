#include "pgb/queries.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <numeric>

#include "pgb/louvain.hpp"
#include "pgb/rng.hpp"

namespace pgb {

QueryCategory query_category(QueryId q) {
    switch (q) {
        case QueryId::NodeCount:
        case QueryId::EdgeCount:
        case QueryId::Triangles:
            return QueryCategory::Counting;
        case QueryId::AvgDegree:
        case QueryId::DegreeVariance:
        case QueryId::DegreeDistribution:
            return QueryCategory::Degree;
        case QueryId::Diameter:
        case QueryId::AvgPathLength:
        case QueryId::DistanceDistribution:
            return QueryCategory::Path;
        case QueryId::Gcc:
        case QueryId::Acc:
        case QueryId::CommunityDetection:
        case QueryId::Modularity:
        case QueryId::Assortativity:
            return QueryCategory::Topology;
        case QueryId::EigenvectorCentrality:
            return QueryCategory::Centrality;
    }
    throw std::invalid_argument("unknown query id");
}

std::string query_code(QueryId q) { return "Q" + std::to_string(static_cast<int>(q)); }

std::string query_name(QueryId q) {
    switch (q) {
        case QueryId::NodeCount: return "node_count";
        case QueryId::EdgeCount: return "edge_count";
        case QueryId::Triangles: return "triangles";
        case QueryId::AvgDegree: return "avg_degree";
        case QueryId::DegreeVariance: return "degree_variance";
        case QueryId::DegreeDistribution: return "degree_distribution";
        case QueryId::Diameter: return "diameter";
        case QueryId::AvgPathLength: return "avg_path_length";
        case QueryId::DistanceDistribution: return "distance_distribution";
        case QueryId::Gcc: return "gcc";
        case QueryId::Acc: return "acc";
        case QueryId::CommunityDetection: return "community";
        case QueryId::Modularity: return "modularity";
        case QueryId::Assortativity: return "assortativity";
        case QueryId::EigenvectorCentrality: return "evc";
    }
    throw std::invalid_argument("unknown query id");
}

QueryId parse_query(const std::string& text) {
    std::string t;
    for (char c : text) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    for (QueryId q : all_queries) {
        std::string code = query_code(q);
        std::string lc;
        for (char c : code) lc.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        if (t == lc || t == query_name(q)) return q;
    }
    throw std::invalid_argument("unknown query: " + text);
}

double q_node_count(const Graph& g) { return static_cast<double>(g.node_count()); }
double q_edge_count(const Graph& g) { return static_cast<double>(g.edge_count()); }

double q_avg_degree(const Graph& g) {
    if (g.node_count() == 0) throw QueryError("average degree: empty node set");
    return 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count());
}

double q_degree_variance(const Graph& g) {
    if (g.node_count() == 0) throw QueryError("degree variance: empty node set");
    double mean = q_avg_degree(g);
    double acc = 0.0;
    for (int u = 0; u < g.node_count(); ++u) {
        double d = static_cast<double>(g.degree(u)) - mean;
        acc += d * d;
    }
    return acc / static_cast<double>(g.node_count());
}

long long q_triangles(const Graph& g) {
    // neighbor intersection over ordered adjacency: count per edge (u, v) the
    // common neighbors w > v, so every triangle is seen once
    long long count = 0;
    for (const auto& [u, v] : g.edges()) {
        const auto& nu = g.neighbors(u);
        const auto& nv = g.neighbors(v);
        auto iu = std::upper_bound(nu.begin(), nu.end(), v);
        auto iv = std::upper_bound(nv.begin(), nv.end(), v);
        while (iu != nu.end() && iv != nv.end()) {
            if (*iu < *iv) ++iu;
            else if (*iv < *iu) ++iv;
            else { ++count; ++iu; ++iv; }
        }
    }
    return count;
}

double q_gcc(const Graph& g) {
    long long wedges = 0;
    for (int u = 0; u < g.node_count(); ++u) {
        long long d = g.degree(u);
        wedges += d * (d - 1) / 2;
    }
    if (wedges == 0) throw QueryError("gcc: graph has no wedge");
    return 3.0 * static_cast<double>(q_triangles(g)) / static_cast<double>(wedges);
}

double q_acc(const Graph& g) {
    if (g.node_count() == 0) throw QueryError("acc: empty node set");
    double sum = 0.0;
    for (int u = 0; u < g.node_count(); ++u) {
        long long d = g.degree(u);
        if (d < 2) continue;
        const auto& nb = g.neighbors(u);
        long long links = 0;
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (g.has_edge(nb[i], nb[j])) ++links;
        sum += 2.0 * static_cast<double>(links) / (static_cast<double>(d) * static_cast<double>(d - 1));
    }
    return sum / static_cast<double>(g.node_count());
}

std::vector<double> q_degree_distribution(const Graph& g) {
    if (g.node_count() == 0) throw QueryError("degree distribution: empty node set");
    int max_d = 0;
    for (int u = 0; u < g.node_count(); ++u) max_d = std::max(max_d, g.degree(u));
    std::vector<double> hist(static_cast<std::size_t>(max_d) + 1, 0.0);
    for (int u = 0; u < g.node_count(); ++u) hist[static_cast<std::size_t>(g.degree(u))] += 1.0;
    for (double& h : hist) h /= static_cast<double>(g.node_count());
    return hist;
}

namespace {

std::vector<int> largest_component(const Graph& g) {
    const int n = g.node_count();
    std::vector<int> comp(static_cast<std::size_t>(n), -1);
    int best_root = -1;
    std::size_t best_size = 0;
    std::vector<int> stack, members, best_members;
    for (int s = 0; s < n; ++s) {
        if (comp[static_cast<std::size_t>(s)] >= 0) continue;
        members.clear();
        stack.push_back(s);
        comp[static_cast<std::size_t>(s)] = s;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            members.push_back(u);
            for (int v : g.neighbors(u)) {
                if (comp[static_cast<std::size_t>(v)] < 0) {
                    comp[static_cast<std::size_t>(v)] = s;
                    stack.push_back(v);
                }
            }
        }
        if (members.size() > best_size) {
            best_size = members.size();
            best_root = s;
            best_members = members;
        }
    }
    (void)best_root;
    std::sort(best_members.begin(), best_members.end());
    return best_members;
}

// BFS over the LCC subgraph given a node->local index map.
void bfs_distances(const Graph& g, const std::vector<int>& members,
                   const std::vector<int>& local_of, int source_local, std::vector<int>& dist) {
    std::fill(dist.begin(), dist.end(), -1);
    std::deque<int> queue;
    dist[static_cast<std::size_t>(source_local)] = 0;
    queue.push_back(source_local);
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : g.neighbors(members[static_cast<std::size_t>(u)])) {
            int lv = local_of[static_cast<std::size_t>(v)];
            if (lv >= 0 && dist[static_cast<std::size_t>(lv)] < 0) {
                dist[static_cast<std::size_t>(lv)] = dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(lv);
            }
        }
    }
}

} // namespace

PathStats q_path_stats(const Graph& g) {
    if (g.edge_count() == 0) throw QueryError("path statistics: no finite distances");
    std::vector<int> members = largest_component(g);
    const int k = static_cast<int>(members.size());
    std::vector<int> local_of(static_cast<std::size_t>(g.node_count()), -1);
    for (int i = 0; i < k; ++i) local_of[static_cast<std::size_t>(members[static_cast<std::size_t>(i)])] = i;

    constexpr int kExactLimit = 3000;
    constexpr int kSampleSources = 500;
    PathStats stats;
    std::vector<int> sources;
    if (k <= kExactLimit) {
        sources.resize(static_cast<std::size_t>(k));
        std::iota(sources.begin(), sources.end(), 0);
    } else {
        stats.approximate = true;
        // fixed internal seed keeps the query pure: same graph, same sources
        Rng rng(mix_seed(0x70617468ULL, static_cast<std::uint64_t>(k)));
        std::vector<int> pool(static_cast<std::size_t>(k));
        std::iota(pool.begin(), pool.end(), 0);
        rng.shuffle(pool);
        sources.assign(pool.begin(), pool.begin() + std::min(k, kSampleSources));
    }
    stats.sources = static_cast<int>(sources.size());

    std::vector<int> dist(static_cast<std::size_t>(k));
    std::vector<long long> hist;
    long long pairs = 0;
    long long dist_sum = 0;
    int max_dist = 0;
    for (int s : sources) {
        bfs_distances(g, members, local_of, s, dist);
        for (int i = 0; i < k; ++i) {
            int d = dist[static_cast<std::size_t>(i)];
            if (d <= 0) continue; // self or unreachable (cannot happen inside LCC)
            if (d > max_dist) max_dist = d;
            if (static_cast<std::size_t>(d) >= hist.size()) hist.resize(static_cast<std::size_t>(d) + 1, 0);
            hist[static_cast<std::size_t>(d)] += 1;
            dist_sum += d;
            ++pairs;
        }
    }
    if (pairs == 0) throw QueryError("path statistics: no finite distances");
    stats.diameter = static_cast<double>(max_dist);
    stats.avg_path = static_cast<double>(dist_sum) / static_cast<double>(pairs);
    stats.distance_distribution.assign(hist.size(), 0.0);
    for (std::size_t d = 0; d < hist.size(); ++d)
        stats.distance_distribution[d] = static_cast<double>(hist[d]) / static_cast<double>(pairs);
    return stats;
}

double q_diameter(const Graph& g) { return q_path_stats(g).diameter; }
double q_avg_path(const Graph& g) { return q_path_stats(g).avg_path; }
std::vector<double> q_distance_distribution(const Graph& g) {
    return q_path_stats(g).distance_distribution;
}

std::vector<int> q_community_detection(const Graph& g, std::uint64_t seed) {
    return louvain(g, seed);
}

double q_modularity(const Graph& g, const std::vector<int>& partition) {
    if (g.edge_count() == 0) throw QueryError("modularity: graph has no edges");
    if (partition.size() != static_cast<std::size_t>(g.node_count()))
        throw std::invalid_argument("modularity: partition length mismatch");
    int n_comm = *std::max_element(partition.begin(), partition.end()) + 1;
    std::vector<double> intra(static_cast<std::size_t>(n_comm), 0.0);
    std::vector<double> total_deg(static_cast<std::size_t>(n_comm), 0.0);
    for (const auto& [u, v] : g.edges())
        if (partition[static_cast<std::size_t>(u)] == partition[static_cast<std::size_t>(v)])
            intra[static_cast<std::size_t>(partition[static_cast<std::size_t>(u)])] += 1.0;
    for (int u = 0; u < g.node_count(); ++u)
        total_deg[static_cast<std::size_t>(partition[static_cast<std::size_t>(u)])] +=
            static_cast<double>(g.degree(u));
    double m = static_cast<double>(g.edge_count());
    double q = 0.0;
    for (int c = 0; c < n_comm; ++c) {
        double frac = total_deg[static_cast<std::size_t>(c)] / (2.0 * m);
        q += intra[static_cast<std::size_t>(c)] / m - frac * frac;
    }
    return q;
}

double q_assortativity(const Graph& g) {
    if (g.edge_count() == 0) throw QueryError("assortativity: graph has no edges");
    // Pearson correlation over the 2m directed endpoint pairs
    double sx = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [u, v] : g.edges()) {
        double du = static_cast<double>(g.degree(u));
        double dv = static_cast<double>(g.degree(v));
        sx += du + dv;
        sxx += du * du + dv * dv;
        sxy += 2.0 * du * dv;
    }
    double count = 2.0 * static_cast<double>(g.edge_count());
    double mean = sx / count;
    double var = sxx / count - mean * mean;
    double cov = sxy / count - mean * mean;
    if (var <= 1e-12 * std::max(1.0, mean * mean))
        throw QueryError("assortativity: undefined (zero degree variance at endpoints)");
    return cov / var;
}

EvcResult q_eigenvector_centrality(const Graph& g) {
    if (g.edge_count() == 0) throw QueryError("eigenvector centrality: graph has no edges");
    std::vector<int> members = largest_component(g);
    const int k = static_cast<int>(members.size());
    std::vector<int> local_of(static_cast<std::size_t>(g.node_count()), -1);
    for (int i = 0; i < k; ++i) local_of[static_cast<std::size_t>(members[static_cast<std::size_t>(i)])] = i;

    std::vector<double> x(static_cast<std::size_t>(k), 1.0 / std::sqrt(static_cast<double>(k)));
    std::vector<double> y(static_cast<std::size_t>(k), 0.0);
    constexpr double kTol = 1e-8;
    constexpr int kMaxIter = 1000;
    EvcResult result;
    result.converged = false;
    for (int it = 1; it <= kMaxIter; ++it) {
        for (int i = 0; i < k; ++i) {
            double acc = 0.0;
            for (int v : g.neighbors(members[static_cast<std::size_t>(i)]))
                acc += x[static_cast<std::size_t>(local_of[static_cast<std::size_t>(v)])];
            y[static_cast<std::size_t>(i)] = acc;
        }
        // 0.5 damping: iterate (x + Ax)/2, which shares eigenvectors with A
        // and suppresses bipartite oscillation
        double norm = 0.0;
        for (int i = 0; i < k; ++i) {
            y[static_cast<std::size_t>(i)] = 0.5 * x[static_cast<std::size_t>(i)] + 0.5 * y[static_cast<std::size_t>(i)];
            norm += y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
        }
        norm = std::sqrt(norm);
        if (norm == 0.0) break;
        double change = 0.0;
        for (int i = 0; i < k; ++i) {
            double next = y[static_cast<std::size_t>(i)] / norm;
            double diff = next - x[static_cast<std::size_t>(i)];
            change += diff * diff;
            x[static_cast<std::size_t>(i)] = next;
        }
        result.iterations = it;
        if (std::sqrt(change) < kTol) {
            result.converged = true;
            break;
        }
    }
    result.scores.assign(static_cast<std::size_t>(g.node_count()), 0.0);
    for (int i = 0; i < k; ++i)
        result.scores[static_cast<std::size_t>(members[static_cast<std::size_t>(i)])] =
            std::fabs(x[static_cast<std::size_t>(i)]);
    // renormalize after the abs (Perron vector is non-negative anyway)
    double norm = 0.0;
    for (double s : result.scores) norm += s * s;
    norm = std::sqrt(norm);
    if (norm > 0.0)
        for (double& s : result.scores) s /= norm;
    return result;
}

QueryValue run_query(QueryId q, const Graph& g, std::uint64_t seed) {
    QueryValue out;
    switch (q) {
        case QueryId::NodeCount: out.scalar = q_node_count(g); return out;
        case QueryId::EdgeCount: out.scalar = q_edge_count(g); return out;
        case QueryId::Triangles: out.scalar = static_cast<double>(q_triangles(g)); return out;
        case QueryId::AvgDegree: out.scalar = q_avg_degree(g); return out;
        case QueryId::DegreeVariance: out.scalar = q_degree_variance(g); return out;
        case QueryId::DegreeDistribution:
            out.kind = QueryValue::Kind::Distribution;
            out.values = q_degree_distribution(g);
            return out;
        case QueryId::Diameter: {
            PathStats s = q_path_stats(g);
            out.scalar = s.diameter;
            out.note = s.approximate ? "approximate" : "";
            return out;
        }
        case QueryId::AvgPathLength: {
            PathStats s = q_path_stats(g);
            out.scalar = s.avg_path;
            out.note = s.approximate ? "approximate" : "";
            return out;
        }
        case QueryId::DistanceDistribution: {
            PathStats s = q_path_stats(g);
            out.kind = QueryValue::Kind::Distribution;
            out.values = std::move(s.distance_distribution);
            out.note = s.approximate ? "approximate" : "";
            return out;
        }
        case QueryId::Gcc: out.scalar = q_gcc(g); return out;
        case QueryId::Acc: out.scalar = q_acc(g); return out;
        case QueryId::CommunityDetection:
            out.kind = QueryValue::Kind::Partition;
            out.labels = q_community_detection(g, seed);
            return out;
        case QueryId::Modularity:
            out.scalar = q_modularity(g, q_community_detection(g, seed));
            return out;
        case QueryId::Assortativity: out.scalar = q_assortativity(g); return out;
        case QueryId::EigenvectorCentrality: {
            EvcResult r = q_eigenvector_centrality(g);
            out.kind = QueryValue::Kind::NodeScores;
            out.values = std::move(r.scores);
            if (!r.converged) out.note = "power iteration did not converge";
            return out;
        }
    }
    throw std::invalid_argument("unknown query id");
}

} // namespace pgb
