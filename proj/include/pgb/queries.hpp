#ifndef PGB_QUERIES_HPP
#define PGB_QUERIES_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgb/graph.hpp"

namespace pgb {

/// Raised when a query is undefined on the given graph (e.g. assortativity of
/// a regular graph, path statistics of an edgeless graph).
struct QueryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class QueryId {
    NodeCount = 1,       // Q1  |V|
    EdgeCount,           // Q2  |E|
    Triangles,           // Q3
    AvgDegree,           // Q4
    DegreeVariance,      // Q5
    DegreeDistribution,  // Q6
    Diameter,            // Q7
    AvgPathLength,       // Q8
    DistanceDistribution,// Q9
    Gcc,                 // Q10
    Acc,                 // Q11
    CommunityDetection,  // Q12
    Modularity,          // Q13
    Assortativity,       // Q14
    EigenvectorCentrality// Q15
};

enum class QueryCategory { Counting, Degree, Path, Topology, Centrality };

constexpr std::array<QueryId, 15> all_queries = {
    QueryId::NodeCount,        QueryId::EdgeCount,      QueryId::Triangles,
    QueryId::AvgDegree,        QueryId::DegreeVariance, QueryId::DegreeDistribution,
    QueryId::Diameter,         QueryId::AvgPathLength,  QueryId::DistanceDistribution,
    QueryId::Gcc,              QueryId::Acc,            QueryId::CommunityDetection,
    QueryId::Modularity,       QueryId::Assortativity,  QueryId::EigenvectorCentrality};

QueryCategory query_category(QueryId q);
std::string query_code(QueryId q);   // "Q1".."Q15"
std::string query_name(QueryId q);   // "node_count", "acc", ...
QueryId parse_query(const std::string& text); // accepts Q-codes and names

struct QueryValue {
    enum class Kind { Scalar, Distribution, Partition, NodeScores };
    Kind kind = Kind::Scalar;
    double scalar = 0.0;
    std::vector<double> values; // distribution or node scores
    std::vector<int> labels;    // partition
    std::string note;           // e.g. "approximate: sampled 500 BFS sources"
};

// Scalar queries ------------------------------------------------------------
double q_node_count(const Graph& g);
double q_edge_count(const Graph& g);
double q_avg_degree(const Graph& g);
double q_degree_variance(const Graph& g);
long long q_triangles(const Graph& g);

/// 3 * triangles / wedges; throws if the graph has no wedge.
double q_gcc(const Graph& g);

/// Average local clustering coefficient; nodes with degree < 2 count as 0.
double q_acc(const Graph& g);

/// Pearson correlation of endpoint degrees over both edge orientations;
/// throws "undefined" when endpoint degrees have zero variance.
double q_assortativity(const Graph& g);

// Path queries (largest connected component) --------------------------------
struct PathStats {
    double diameter = 0.0;
    double avg_path = 0.0;
    std::vector<double> distance_distribution; // index = distance, entry 0 at index 0
    bool approximate = false;                  // true when BFS sources were sampled
    int sources = 0;
};

/// Exact all-source BFS when the LCC has <= 3000 nodes, otherwise BFS from
/// min(500, |LCC|) sampled sources. Throws on edgeless graphs.
PathStats q_path_stats(const Graph& g);
double q_diameter(const Graph& g);
double q_avg_path(const Graph& g);
std::vector<double> q_distance_distribution(const Graph& g);

// Structured queries ---------------------------------------------------------
std::vector<double> q_degree_distribution(const Graph& g);

/// Louvain partition, seeded sweep order; contiguous labels.
std::vector<int> q_community_detection(const Graph& g, std::uint64_t seed);

/// Newman modularity of a given partition; throws when m = 0.
double q_modularity(const Graph& g, const std::vector<int>& partition);

struct EvcResult {
    std::vector<double> scores; // L2-normalized, non-LCC nodes 0
    bool converged = true;
    int iterations = 0;
};

/// Power iteration with 0.5 damping on the LCC, tolerance 1e-8, cap 1000.
EvcResult q_eigenvector_centrality(const Graph& g);

/// Dispatch used by the harness; seed matters only for community detection.
QueryValue run_query(QueryId q, const Graph& g, std::uint64_t seed);

} // namespace pgb

#endif
