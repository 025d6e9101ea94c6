#ifndef PGB_CONSTRUCTORS_HPP
#define PGB_CONSTRUCTORS_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "pgb/graph.hpp"
#include "pgb/rng.hpp"

namespace pgb {

/// dK-2 series: number of edges joining a degree-a node to a degree-b node,
/// keyed (a, b) with a <= b.
using JointDegreeMatrix = std::map<std::pair<int, int>, long long>;

JointDegreeMatrix joint_degree_matrix(const Graph& g);

/// L1 distance between two dK-2 series over their union support.
long long jdm_l1_distance(const JointDegreeMatrix& a, const JointDegreeMatrix& b);

/// Degree histogram implied by a dK-2 series: class k gets
/// round(endpoints(k) / k) nodes.
std::map<int, long long> jdm_degree_histogram(const JointDegreeMatrix& jdm);

/// Chung-Lu: edge (i, j) present independently with probability
/// min(1, w_i * w_j / sum(w)).
Graph construct_chung_lu(const std::vector<double>& weights, Rng& rng);

/// BTER: degree-sorted affinity blocks wired as ER(rho = target_acc), then
/// Chung-Lu over the residual expected degrees.
Graph construct_bter(const std::vector<int>& degrees, double target_acc, Rng& rng);

/// Rounds, clamps to [0, n-1], and decrements the largest degree until the sum
/// is even. This is the standard repair applied to noisy degree sequences.
std::vector<int> repair_degree_sequence(const std::vector<double>& noisy, int n);

/// Extends repair_degree_sequence output until the sequence is graphical
/// (Erdos-Gallai), decrementing the largest degrees.
std::vector<int> make_graphical(std::vector<int> degrees);

bool is_graphical(std::vector<int> degrees);

struct NonGraphicalError : std::runtime_error {
    std::vector<int> repaired;
    explicit NonGraphicalError(std::vector<int> seq)
        : std::runtime_error("degree sequence is not graphical"), repaired(std::move(seq)) {}
};

/// Deterministic Havel-Hakimi realization; throws NonGraphicalError (carrying
/// the repaired suggestion) when the sequence cannot be realized.
Graph construct_havel_hakimi(const std::vector<int>& degrees);

struct Dk2Result {
    Graph graph;
    long long requested_edges = 0;
    long long placed_edges = 0;
    long long swap_attempts = 0;
};

/// Stub-matching realization of a dK-2 series with rejection of self-loops
/// and multi-edges plus a bounded local edge-swap repair pass (budget 10 * m
/// swap attempts). Best-effort: the result reports how many requested edges
/// were placed.
Dk2Result construct_dk2(const JointDegreeMatrix& jdm, Rng& rng);

struct KroneckerInitiator {
    double a = 0.0; // theta[0][0]
    double b = 0.0; // theta[0][1] = theta[1][0]
    double c = 0.0; // theta[1][1]
    int levels = 0;

    void validate() const;
};

/// Pair (i, j) connected with probability prod over levels of
/// theta[bit_l(i)][bit_l(j)]; nodes >= n of the 2^levels-node sample are
/// discarded (truncation).
Graph sample_kronecker(const KroneckerInitiator& init, int n, Rng& rng);

/// Binary hierarchy over nodes: internal node r connects left-right leaf
/// pairs independently with probability p_r.
struct Dendrogram {
    struct Internal {
        int left;  // child: values < n are leaves, >= n index internals - n
        int right;
        double p = 0.0;
    };
    int n_leaves = 0;
    std::vector<Internal> internals; // n_leaves - 1 entries
    int root = 0;                    // index into internals

    void validate() const;
};

Graph sample_from_dendrogram(const Dendrogram& d, Rng& rng);

} // namespace pgb

#endif
