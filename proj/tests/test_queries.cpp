#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>

#ifdef PGB_HAVE_EIGEN
#include <Eigen/Dense>
#endif

#include "oracles.hpp"
#include "pgb/queries.hpp"

using namespace pgb;

namespace {

Graph k4() { return Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}); }

Graph star(int leaves) {
    std::vector<Edge> edges;
    for (int i = 1; i <= leaves; ++i) edges.emplace_back(0, i);
    return Graph(leaves + 1, std::move(edges));
}

Graph path_graph(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(n, std::move(edges));
}

Graph two_cliques(int k) {
    std::vector<Edge> edges;
    for (int block = 0; block < 2; ++block)
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) edges.emplace_back(block * k + i, block * k + j);
    return Graph(2 * k, std::move(edges));
}

} // namespace

TEST_CASE("scalar counting and degree queries") {
    Graph g = k4();
    CHECK(q_node_count(g) == 4);
    CHECK(q_edge_count(g) == 6);
    CHECK(q_avg_degree(g) == doctest::Approx(3.0));
    CHECK(q_degree_variance(g) == doctest::Approx(0.0));

    Graph s = star(4);
    CHECK(q_avg_degree(s) == doctest::Approx(8.0 / 5.0));
    CHECK(q_degree_variance(s) == doctest::Approx(1.44));

    CHECK_THROWS_AS(q_avg_degree(Graph::empty(0)), QueryError);
}

TEST_CASE("triangles: examples and brute-force oracle") {
    CHECK(q_triangles(k4()) == 4);
    Graph k23(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
    CHECK(q_triangles(k23) == 0);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Graph g = oracle::gnp(20, 0.3, seed);
        CHECK(q_triangles(g) == oracle::triangles(g));
    }
}

TEST_CASE("gcc: examples and oracle") {
    Graph triangle(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(q_gcc(triangle) == doctest::Approx(1.0));
    CHECK(q_gcc(star(4)) == doctest::Approx(0.0));
    CHECK_THROWS_AS(q_gcc(Graph(2, {{0, 1}})), QueryError);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Graph g = oracle::gnp(30, 0.2, seed);
        if (oracle::wedges(g) == 0) continue;
        double expected = 3.0 * oracle::triangles(g) / static_cast<double>(oracle::wedges(g));
        CHECK(q_gcc(g) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("acc: examples and oracle") {
    CHECK(q_acc(k4()) == doctest::Approx(1.0));
    CHECK(q_acc(path_graph(3)) == doctest::Approx(0.0));
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Graph g = oracle::gnp(25, 0.25, seed);
        CHECK(q_acc(g) == doctest::Approx(oracle::acc(g)).epsilon(1e-12));
    }
}

TEST_CASE("degree distribution") {
    auto dist = q_degree_distribution(k4());
    CHECK(dist.size() == 4);
    CHECK(dist[3] == doctest::Approx(1.0));

    auto path_dist = q_degree_distribution(path_graph(3));
    CHECK(path_dist[1] == doctest::Approx(2.0 / 3.0));
    CHECK(path_dist[2] == doctest::Approx(1.0 / 3.0));

    Graph ba = generate_ba(10000, 5, 3);
    auto ba_dist = q_degree_distribution(ba);
    double sum = std::accumulate(ba_dist.begin(), ba_dist.end(), 0.0);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    auto mode = std::max_element(ba_dist.begin(), ba_dist.end()) - ba_dist.begin();
    CHECK(mode >= 4);
    CHECK(mode <= 7);
}

TEST_CASE("path statistics: hand examples") {
    Graph p4 = path_graph(4);
    PathStats s = q_path_stats(p4);
    CHECK(s.diameter == doctest::Approx(3.0));
    CHECK(s.avg_path == doctest::Approx(10.0 / 6.0));
    CHECK_FALSE(s.approximate);

    PathStats sk4 = q_path_stats(k4());
    CHECK(sk4.diameter == doctest::Approx(1.0));
    CHECK(sk4.avg_path == doctest::Approx(1.0));
    CHECK(sk4.distance_distribution[1] == doctest::Approx(1.0));

    CHECK_THROWS_AS(q_path_stats(Graph::empty(5)), QueryError);
}

TEST_CASE("path statistics match Floyd-Warshall on random graphs") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        Graph g = oracle::gnp(50, 0.1, seed);
        auto dist = oracle::all_pairs_distances(g);
        // restrict the oracle to the largest component
        std::vector<int> comp_size(50, 0);
        // component of i = set of j with dist >= 0
        int best = 0, best_count = -1;
        for (int i = 0; i < 50; ++i) {
            int count = 0;
            for (int j = 0; j < 50; ++j)
                if (dist[i][j] >= 0) ++count;
            if (count > best_count) { best_count = count; best = i; }
        }
        long long pairs = 0, total = 0;
        int diameter = 0;
        std::vector<long long> hist;
        for (int i = 0; i < 50; ++i) {
            if (dist[best][i] < 0) continue;
            for (int j = 0; j < 50; ++j) {
                if (j == i || dist[best][j] < 0) continue;
                int d = dist[i][j];
                REQUIRE(d > 0);
                diameter = std::max(diameter, d);
                total += d;
                ++pairs;
                if (static_cast<std::size_t>(d) >= hist.size()) hist.resize(d + 1, 0);
                hist[d] += 1;
            }
        }
        PathStats s = q_path_stats(g);
        CHECK(s.diameter == doctest::Approx(diameter));
        CHECK(s.avg_path == doctest::Approx(static_cast<double>(total) / pairs).epsilon(1e-12));
        REQUIRE(s.distance_distribution.size() == hist.size());
        for (std::size_t d = 1; d < hist.size(); ++d)
            CHECK(s.distance_distribution[d] ==
                  doctest::Approx(static_cast<double>(hist[d]) / pairs).epsilon(1e-12));
    }
}

TEST_CASE("community detection recovers planted cliques and is seed-stable") {
    Graph g = two_cliques(10);
    auto part = q_community_detection(g, 7);
    CHECK(*std::max_element(part.begin(), part.end()) == 1);
    for (int i = 0; i < 10; ++i) {
        CHECK(part[i] == part[0]);
        CHECK(part[10 + i] == part[10]);
    }
    CHECK(part[0] != part[10]);

    auto k4_part = q_community_detection(k4(), 3);
    CHECK(*std::max_element(k4_part.begin(), k4_part.end()) == 0);

    CHECK(q_community_detection(g, 5) == q_community_detection(g, 5));

    // edgeless: singletons
    auto singles = q_community_detection(Graph::empty(4), 1);
    CHECK(std::set<int>(singles.begin(), singles.end()).size() == 4);
}

TEST_CASE("modularity: formula cases and oracle") {
    Graph g = two_cliques(5);
    std::vector<int> one(10, 0);
    CHECK(q_modularity(g, one) == doctest::Approx(0.0));

    std::vector<int> planted(10, 0);
    std::fill(planted.begin() + 5, planted.end(), 1);
    CHECK(q_modularity(g, planted) == doctest::Approx(0.5));

    Rng rng(9);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        Graph r = oracle::gnp(30, 0.2, seed);
        std::vector<int> part(30);
        for (auto& p : part) p = static_cast<int>(rng.uniform_index(4));
        CHECK(q_modularity(r, part) == doctest::Approx(oracle::modularity(r, part)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(q_modularity(Graph::empty(3), {0, 0, 0}), QueryError);
}

TEST_CASE("assortativity: star is perfectly disassortative") {
    CHECK(q_assortativity(star(5)) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(q_assortativity(k4()), QueryError); // zero variance
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Graph g = oracle::gnp(40, 0.15, seed);
        double expected;
        try {
            expected = oracle::assortativity(g);
        } catch (...) {
            continue;
        }
        if (!std::isfinite(expected)) continue;
        CHECK(q_assortativity(g) == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("eigenvector centrality: symmetry and dominance") {
    EvcResult r = q_eigenvector_centrality(k4());
    CHECK(r.converged);
    for (double s : r.scores) CHECK(s == doctest::Approx(0.5).epsilon(1e-6)); // 1/sqrt(4)

    EvcResult st = q_eigenvector_centrality(star(4));
    for (std::size_t i = 1; i < st.scores.size(); ++i) CHECK(st.scores[0] > st.scores[i]);

    CHECK_THROWS_AS(q_eigenvector_centrality(Graph::empty(3)), QueryError);

    // bipartite graphs converge thanks to damping
    Graph p2 = path_graph(2);
    CHECK(q_eigenvector_centrality(p2).converged);
}

#ifdef PGB_HAVE_EIGEN
TEST_CASE("eigenvector centrality matches a dense eigensolver") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        Graph g = oracle::gnp(20, 0.3, seed);
        if (g.edge_count() == 0) continue;
        EvcResult r = q_eigenvector_centrality(g);

        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(20, 20);
        for (const auto& [u, v] : g.edges()) {
            a(u, v) = 1.0;
            a(v, u) = 1.0;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
        Eigen::VectorXd top = solver.eigenvectors().col(19).cwiseAbs();
        // compare on the largest component only (the dense vector may put
        // weight on smaller components when eigenvalues tie)
        double dot = 0, na = 0, nb = 0;
        for (int i = 0; i < 20; ++i) {
            if (r.scores[i] == 0.0) continue;
            dot += r.scores[i] * top(i);
            na += r.scores[i] * r.scores[i];
            nb += top(i) * top(i);
        }
        double cosine = dot / std::sqrt(na * nb);
        CHECK(1.0 - cosine < 1e-6);
    }
}
#endif

TEST_CASE("query ids: categories, codes, parsing") {
    CHECK(all_queries.size() == 15);
    int counting = 0, degree = 0, path = 0, topology = 0, centrality = 0;
    for (QueryId q : all_queries) {
        switch (query_category(q)) {
            case QueryCategory::Counting: ++counting; break;
            case QueryCategory::Degree: ++degree; break;
            case QueryCategory::Path: ++path; break;
            case QueryCategory::Topology: ++topology; break;
            case QueryCategory::Centrality: ++centrality; break;
        }
        CHECK(parse_query(query_code(q)) == q);
        CHECK(parse_query(query_name(q)) == q);
    }
    CHECK(counting == 3);
    CHECK(degree == 3);
    CHECK(path == 3);
    CHECK(topology == 5);
    CHECK(centrality == 1);
    CHECK_THROWS(parse_query("Q16"));
}

TEST_CASE("run_query dispatch produces well-formed values") {
    Graph g = oracle::gnp(30, 0.2, 2);
    for (QueryId q : all_queries) {
        QueryValue v = run_query(q, g, 11);
        switch (v.kind) {
            case QueryValue::Kind::Scalar:
                CHECK(std::isfinite(v.scalar));
                break;
            case QueryValue::Kind::Distribution: {
                double sum = std::accumulate(v.values.begin(), v.values.end(), 0.0);
                CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
                for (double p : v.values) CHECK(p >= 0.0);
                break;
            }
            case QueryValue::Kind::Partition: {
                CHECK(v.labels.size() == 30);
                CHECK(*std::min_element(v.labels.begin(), v.labels.end()) == 0);
                break;
            }
            case QueryValue::Kind::NodeScores:
                CHECK(v.values.size() == 30);
                break;
        }
        // purity: identical seeds give identical outputs
        QueryValue again = run_query(q, g, 11);
        CHECK(v.scalar == again.scalar);
        CHECK(v.values == again.values);
        CHECK(v.labels == again.labels);
    }
}
