#include "pgb/constructors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace pgb {

JointDegreeMatrix joint_degree_matrix(const Graph& g) {
    JointDegreeMatrix jdm;
    for (const auto& [u, v] : g.edges()) {
        int a = g.degree(u), b = g.degree(v);
        if (a > b) std::swap(a, b);
        jdm[{a, b}] += 1;
    }
    return jdm;
}

long long jdm_l1_distance(const JointDegreeMatrix& a, const JointDegreeMatrix& b) {
    long long dist = 0;
    for (const auto& [key, count] : a) {
        auto it = b.find(key);
        dist += std::llabs(count - (it == b.end() ? 0 : it->second));
    }
    for (const auto& [key, count] : b)
        if (!a.count(key)) dist += std::llabs(count);
    return dist;
}

std::map<int, long long> jdm_degree_histogram(const JointDegreeMatrix& jdm) {
    std::map<int, long long> endpoints;
    for (const auto& [key, count] : jdm) {
        const auto& [a, b] = key;
        if (a == b) {
            endpoints[a] += 2 * count;
        } else {
            endpoints[a] += count;
            endpoints[b] += count;
        }
    }
    std::map<int, long long> hist;
    for (const auto& [deg, ends] : endpoints) {
        if (deg <= 0) continue;
        long long nodes = std::llround(static_cast<double>(ends) / static_cast<double>(deg));
        if (nodes > 0) hist[deg] = nodes;
    }
    return hist;
}

Graph construct_chung_lu(const std::vector<double>& weights, Rng& rng) {
    const int n = static_cast<int>(weights.size());
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("construct_chung_lu: negative weight");
        total += w;
    }
    if (total <= 0.0) return Graph::empty(n);

    // descending weight order lets the per-row skip probability only shrink,
    // so geometric skips with thinning stay exact
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (weights[static_cast<std::size_t>(x)] != weights[static_cast<std::size_t>(y)])
            return weights[static_cast<std::size_t>(x)] > weights[static_cast<std::size_t>(y)];
        return x < y;
    });

    std::vector<Edge> edges;
    for (int a = 0; a < n; ++a) {
        double wi = weights[static_cast<std::size_t>(order[static_cast<std::size_t>(a)])];
        if (wi <= 0.0) break;
        int b = a + 1;
        if (b >= n) break;
        double p = std::min(1.0, wi * weights[static_cast<std::size_t>(order[static_cast<std::size_t>(b)])] / total);
        while (b < n && p > 0.0) {
            if (p < 1.0) b += static_cast<int>(rng.geometric_skip(p));
            if (b >= n) break;
            double q = std::min(1.0, wi * weights[static_cast<std::size_t>(order[static_cast<std::size_t>(b)])] / total);
            if (rng.uniform() < q / p)
                edges.emplace_back(order[static_cast<std::size_t>(a)], order[static_cast<std::size_t>(b)]);
            p = q;
            ++b;
        }
    }
    return Graph(n, std::move(edges));
}

Graph construct_bter(const std::vector<int>& degrees, double target_acc, Rng& rng) {
    const int n = static_cast<int>(degrees.size());
    for (int d : degrees)
        if (d < 0) throw std::invalid_argument("construct_bter: negative degree");
    double rho = std::clamp(target_acc, 0.0, 1.0);

    // phase 1: degree-sorted affinity blocks, each wired as ER(rho)
    std::vector<int> order;
    for (int u = 0; u < n; ++u)
        if (degrees[static_cast<std::size_t>(u)] > 0) order.push_back(u);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        if (degrees[static_cast<std::size_t>(x)] != degrees[static_cast<std::size_t>(y)])
            return degrees[static_cast<std::size_t>(x)] < degrees[static_cast<std::size_t>(y)];
        return x < y;
    });

    std::vector<Edge> edges;
    std::vector<double> residual(static_cast<std::size_t>(n), 0.0);
    for (int u = 0; u < n; ++u) residual[static_cast<std::size_t>(u)] = degrees[static_cast<std::size_t>(u)];

    std::size_t start = 0;
    while (start < order.size()) {
        int d_min = degrees[static_cast<std::size_t>(order[start])];
        std::size_t size = std::min<std::size_t>(static_cast<std::size_t>(d_min) + 1, order.size() - start);
        if (size >= 2 && rho > 0.0) {
            long long pairs = static_cast<long long>(size) * (static_cast<long long>(size) - 1) / 2;
            long long idx = -1;
            while (true) {
                idx += 1 + static_cast<long long>(rng.geometric_skip(rho));
                if (idx >= pairs) break;
                // unrank within the block
                std::size_t i = 0;
                long long left = idx;
                while (left >= static_cast<long long>(size - 1 - i)) {
                    left -= static_cast<long long>(size - 1 - i);
                    ++i;
                }
                std::size_t j = i + 1 + static_cast<std::size_t>(left);
                edges.emplace_back(order[start + i], order[start + j]);
            }
        }
        for (std::size_t i = 0; i < size; ++i) {
            double within = rho * static_cast<double>(size - 1);
            auto u = static_cast<std::size_t>(order[start + i]);
            residual[u] = std::max(0.0, residual[u] - within);
        }
        start += size;
    }

    // phase 2: Chung-Lu over the residual expected degrees
    Graph cl = construct_chung_lu(residual, rng);
    for (const auto& e : cl.edges()) edges.push_back(e);
    return Graph(n, std::move(edges));
}

std::vector<int> repair_degree_sequence(const std::vector<double>& noisy, int n) {
    std::vector<int> repaired(noisy.size());
    for (std::size_t i = 0; i < noisy.size(); ++i) {
        long long r = std::llround(noisy[i]);
        repaired[i] = static_cast<int>(std::clamp<long long>(r, 0, std::max(0, n - 1)));
    }
    long long sum = std::accumulate(repaired.begin(), repaired.end(), 0LL);
    if (sum % 2 != 0) {
        auto it = std::max_element(repaired.begin(), repaired.end());
        if (*it > 0) --*it;
    }
    return repaired;
}

bool is_graphical(std::vector<int> degrees) {
    std::sort(degrees.begin(), degrees.end(), std::greater<>());
    const std::size_t n = degrees.size();
    long long sum = std::accumulate(degrees.begin(), degrees.end(), 0LL);
    if (sum % 2 != 0) return false;
    if (n == 0) return true;
    if (degrees[0] > static_cast<int>(n) - 1 || degrees[n - 1] < 0) return false;

    // Erdos-Gallai with prefix sums
    std::vector<long long> prefix(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + degrees[i];
    for (std::size_t k = 1; k <= n; ++k) {
        long long lhs = prefix[k];
        // split the tail at the first index with degree <= k
        auto it = std::lower_bound(degrees.begin() + static_cast<long>(k), degrees.end(),
                                   static_cast<int>(k), std::greater_equal<>());
        auto split = static_cast<std::size_t>(it - degrees.begin());
        long long tail_big = static_cast<long long>(split - k) * static_cast<long long>(k);
        long long tail_small = prefix[n] - prefix[split];
        long long rhs = static_cast<long long>(k) * (static_cast<long long>(k) - 1) + tail_big + tail_small;
        if (lhs > rhs) return false;
    }
    return true;
}

std::vector<int> make_graphical(std::vector<int> degrees) {
    const int n = static_cast<int>(degrees.size());
    for (auto& d : degrees) d = std::clamp(d, 0, std::max(0, n - 1));
    long long sum = std::accumulate(degrees.begin(), degrees.end(), 0LL);
    if (sum % 2 != 0) {
        auto it = std::max_element(degrees.begin(), degrees.end());
        if (*it > 0) --*it;
    }
    while (!is_graphical(degrees)) {
        auto hi = std::max_element(degrees.begin(), degrees.end());
        if (*hi <= 0) break;
        --*hi;
        hi = std::max_element(degrees.begin(), degrees.end());
        if (*hi > 0) --*hi; // keep the sum even
    }
    return degrees;
}

Graph construct_havel_hakimi(const std::vector<int>& degrees) {
    const int n = static_cast<int>(degrees.size());
    std::vector<std::pair<int, int>> remaining; // (degree left, node)
    for (int u = 0; u < n; ++u) {
        int d = degrees[static_cast<std::size_t>(u)];
        if (d < 0 || d > n - 1) throw NonGraphicalError(make_graphical(degrees));
        remaining.emplace_back(d, u);
    }
    std::vector<Edge> edges;
    while (true) {
        std::sort(remaining.begin(), remaining.end(), [](const auto& x, const auto& y) {
            if (x.first != y.first) return x.first > y.first;
            return x.second < y.second;
        });
        int d = remaining.front().first;
        if (d == 0) break;
        int u = remaining.front().second;
        if (static_cast<std::size_t>(d) >= remaining.size())
            throw NonGraphicalError(make_graphical(degrees));
        remaining.front().first = 0;
        for (int i = 1; i <= d; ++i) {
            auto& [dv, v] = remaining[static_cast<std::size_t>(i)];
            if (dv <= 0) throw NonGraphicalError(make_graphical(degrees));
            --dv;
            edges.emplace_back(u, v);
        }
    }
    return Graph(n, std::move(edges));
}

namespace {

struct StubPools {
    std::vector<int> class_degree;               // sorted distinct degrees
    std::vector<std::vector<int>> pool;          // per class: node ids, one per stub
    int node_count = 0;
    std::vector<int> degree_of_class_index;      // class index -> degree

    int class_index(int degree) const {
        auto it = std::lower_bound(class_degree.begin(), class_degree.end(), degree);
        return static_cast<int>(it - class_degree.begin());
    }
};

StubPools build_pools(const JointDegreeMatrix& jdm, Rng& rng) {
    StubPools pools;
    std::map<int, long long> hist = jdm_degree_histogram(jdm);
    for (const auto& [deg, nodes] : hist) pools.class_degree.push_back(deg);
    pools.pool.resize(pools.class_degree.size());
    int next_id = 0;
    for (std::size_t c = 0; c < pools.class_degree.size(); ++c) {
        int deg = pools.class_degree[c];
        long long nodes = hist.at(deg);
        for (long long i = 0; i < nodes; ++i) {
            for (int s = 0; s < deg; ++s) pools.pool[c].push_back(next_id);
            ++next_id;
        }
        rng.shuffle(pools.pool[c]);
    }
    pools.node_count = next_id;
    return pools;
}

} // namespace

Dk2Result construct_dk2(const JointDegreeMatrix& jdm, Rng& rng) {
    for (const auto& [key, count] : jdm)
        if (count < 0) throw std::invalid_argument("construct_dk2: negative cell count");

    Dk2Result result;
    StubPools pools = build_pools(jdm, rng);
    const int n = pools.node_count;

    auto edge_key = [n](int u, int v) {
        if (u > v) std::swap(u, v);
        return static_cast<std::uint64_t>(u) * static_cast<std::uint64_t>(n) +
               static_cast<std::uint64_t>(v);
    };
    std::unordered_set<std::uint64_t> edge_set;
    std::map<std::pair<int, int>, std::vector<Edge>> placed_by_cell;
    std::map<std::pair<int, int>, long long> unplaced_by_cell;

    auto take_stub = [&](std::vector<int>& pool, std::size_t at) {
        std::swap(pool[at], pool.back());
        pool.pop_back();
    };

    constexpr int kDrawRetries = 40;
    for (const auto& [cell, count] : jdm) {
        const auto& [da, db] = cell;
        if (count <= 0) continue;
        result.requested_edges += count;
        int ca = pools.class_index(da);
        int cb = pools.class_index(db);
        if (ca >= static_cast<int>(pools.class_degree.size()) || pools.class_degree[static_cast<std::size_t>(ca)] != da ||
            cb >= static_cast<int>(pools.class_degree.size()) || pools.class_degree[static_cast<std::size_t>(cb)] != db) {
            unplaced_by_cell[cell] += count; // degree class vanished in rounding
            continue;
        }
        auto& pa = pools.pool[static_cast<std::size_t>(ca)];
        auto& pb = pools.pool[static_cast<std::size_t>(cb)];
        for (long long t = 0; t < count; ++t) {
            bool placed = false;
            for (int attempt = 0; attempt < kDrawRetries; ++attempt) {
                if (ca == cb) {
                    if (pa.size() < 2) break;
                    std::size_t iu = static_cast<std::size_t>(rng.uniform_index(pa.size()));
                    std::size_t iv = static_cast<std::size_t>(rng.uniform_index(pa.size()));
                    if (iu == iv) continue;
                    int u = pa[iu], v = pa[iv];
                    if (u == v || edge_set.count(edge_key(u, v))) continue;
                    if (iu < iv) std::swap(iu, iv);
                    take_stub(pa, iu);
                    take_stub(pa, iv);
                    edge_set.insert(edge_key(u, v));
                    placed_by_cell[cell].emplace_back(u, v);
                    placed = true;
                    break;
                }
                if (pa.empty() || pb.empty()) break;
                std::size_t iu = static_cast<std::size_t>(rng.uniform_index(pa.size()));
                std::size_t iv = static_cast<std::size_t>(rng.uniform_index(pb.size()));
                int u = pa[iu], v = pb[iv];
                if (u == v || edge_set.count(edge_key(u, v))) continue;
                take_stub(pa, iu);
                take_stub(pb, iv);
                edge_set.insert(edge_key(u, v));
                placed_by_cell[cell].emplace_back(u, v);
                placed = true;
                break;
            }
            if (!placed) unplaced_by_cell[cell] += 1;
        }
    }

    // local edge-swap repair for stuck (a, b) requirements holding leftover
    // stubs u, v:
    //  - (u, v) placeable now: place it
    //  - (u, v) exists: rewire an existing (a, b) edge (x, y) into
    //    (u, y) + (x, v); the cell gains one edge and every endpoint keeps
    //    its degree class
    //  - u == v (two stubs of one node, diagonal cell): rewire (x, y) into
    //    (u, x) + (u, y)
    long long total_requested = result.requested_edges;
    long long swap_budget = 10 * std::max<long long>(total_requested, 1);
    for (auto& [cell, missing] : unplaced_by_cell) {
        const auto& [da, db] = cell;
        int ca = pools.class_index(da);
        int cb = pools.class_index(db);
        if (ca >= static_cast<int>(pools.class_degree.size()) ||
            pools.class_degree[static_cast<std::size_t>(ca)] != da ||
            cb >= static_cast<int>(pools.class_degree.size()) ||
            pools.class_degree[static_cast<std::size_t>(cb)] != db)
            continue;
        auto& pa = pools.pool[static_cast<std::size_t>(ca)];
        auto& pb = pools.pool[static_cast<std::size_t>(cb)];
        auto& cell_edges = placed_by_cell[cell];
        bool same = (ca == cb);
        long long stall = 0;
        while (missing > 0 && swap_budget > 0 && stall < 200) {
            if ((same && pa.size() < 2) || (!same && (pa.empty() || pb.empty()))) break;
            --swap_budget;
            result.swap_attempts += 1;
            ++stall;
            std::size_t iu = static_cast<std::size_t>(rng.uniform_index(pa.size()));
            std::size_t iv = same ? static_cast<std::size_t>(rng.uniform_index(pa.size()))
                                  : static_cast<std::size_t>(rng.uniform_index(pb.size()));
            if (same && iu == iv) continue;
            int u = pa[iu];
            int v = same ? pa[iv] : pb[iv];
            auto consume_stubs = [&] {
                if (same && iu < iv) std::swap(iu, iv);
                take_stub(pa, iu);
                take_stub(same ? pa : pb, iv);
                --missing;
                stall = 0;
            };
            if (u != v && !edge_set.count(edge_key(u, v))) {
                edge_set.insert(edge_key(u, v));
                cell_edges.emplace_back(u, v);
                consume_stubs();
                continue;
            }
            if (cell_edges.empty()) continue;
            auto& picked = cell_edges[static_cast<std::size_t>(rng.uniform_index(cell_edges.size()))];
            int x = picked.first, y = picked.second;
            if (same && rng.bernoulli(0.5)) std::swap(x, y);
            if (u == v) {
                // wedge rewiring consumes both stubs of u
                if (x == u || y == u) continue;
                if (edge_set.count(edge_key(u, x)) || edge_set.count(edge_key(u, y))) continue;
                edge_set.erase(edge_key(picked.first, picked.second));
                picked = {u, y};
                edge_set.insert(edge_key(u, y));
                edge_set.insert(edge_key(u, x));
                cell_edges.emplace_back(same ? Edge{u, x} : Edge{x, u});
                consume_stubs();
                continue;
            }
            if (x == u || y == v || u == y || x == v) continue;
            if (edge_set.count(edge_key(u, y)) || edge_set.count(edge_key(x, v))) continue;
            edge_set.erase(edge_key(picked.first, picked.second));
            picked = {u, y};
            edge_set.insert(edge_key(u, y));
            edge_set.insert(edge_key(x, v));
            cell_edges.emplace_back(x, v);
            consume_stubs();
        }
    }

    // stub-transfer pass: a leftover stub of node v can migrate to another
    // node v2 of the same degree class by rewiring one existing edge
    // (v2, w) -> (v, w); the edge keeps its cell and all degrees their class.
    // This resolves the dead ends the cell-local swaps cannot reach.
    struct Candidate {
        std::pair<int, int> cell;
        std::size_t index;
        bool second_side; // the class endpoint is .second
    };
    auto collect_candidates = [&](int cls) {
        std::vector<Candidate> out;
        int deg = pools.class_degree[static_cast<std::size_t>(cls)];
        for (auto& [cell2, list] : placed_by_cell) {
            bool first_matches = cell2.first == deg;
            bool second_matches = cell2.second == deg;
            if (!first_matches && !second_matches) continue;
            for (std::size_t i = 0; i < list.size(); ++i) {
                if (first_matches) out.push_back({cell2, i, false});
                if (second_matches && cell2.first != cell2.second) out.push_back({cell2, i, true});
            }
        }
        return out;
    };
    for (auto& [cell, missing] : unplaced_by_cell) {
        const auto& [da, db] = cell;
        int ca = pools.class_index(da);
        int cb = pools.class_index(db);
        if (ca >= static_cast<int>(pools.class_degree.size()) ||
            pools.class_degree[static_cast<std::size_t>(ca)] != da ||
            cb >= static_cast<int>(pools.class_degree.size()) ||
            pools.class_degree[static_cast<std::size_t>(cb)] != db)
            continue;
        auto& pa = pools.pool[static_cast<std::size_t>(ca)];
        auto& pb = pools.pool[static_cast<std::size_t>(cb)];
        bool same = (ca == cb);
        while (missing > 0 && swap_budget > 0) {
            if ((same && pa.size() < 2) || (!same && (pa.empty() || pb.empty()))) break;
            int u = pa.back();
            int v = same ? pa[pa.size() - 2] : pb.back();
            bool placed = false;
            for (int probe = 0; probe < 400 && swap_budget > 0; ++probe) {
                --swap_budget;
                result.swap_attempts += 1;
                if (u != v && !edge_set.count(edge_key(u, v))) {
                    pa.pop_back();
                    (same ? pa : pb).pop_back();
                    edge_set.insert(edge_key(u, v));
                    placed_by_cell[cell].emplace_back(u, v);
                    --missing;
                    placed = true;
                    break;
                }
                // migrate one side's stub to a classmate
                bool move_v = same ? rng.bernoulli(0.5) : (probe % 2 == 0);
                int cls = move_v ? cb : ca;
                auto candidates = collect_candidates(cls);
                if (candidates.empty()) break;
                const Candidate& cand =
                    candidates[static_cast<std::size_t>(rng.uniform_index(candidates.size()))];
                auto& edge = placed_by_cell[cand.cell][cand.index];
                int v2 = cand.second_side ? edge.second : edge.first;
                int w = cand.second_side ? edge.first : edge.second;
                int moving = move_v ? v : u;
                if (v2 == moving || w == moving) continue;
                if (edge_set.count(edge_key(moving, w))) continue;
                edge_set.erase(edge_key(edge.first, edge.second));
                if (cand.second_side) edge.second = moving;
                else edge.first = moving;
                edge_set.insert(edge_key(edge.first, edge.second));
                // the classmate's freed stub replaces ours
                if (move_v) {
                    if (same) pa[pa.size() - 2] = v2;
                    else pb.back() = v2;
                    v = v2;
                } else {
                    pa.back() = v2;
                    u = v2;
                }
            }
            if (!placed) break;
        }
    }

    std::vector<Edge> edges;
    for (const auto& [cell, list] : placed_by_cell)
        for (const auto& e : list) edges.push_back(e);
    result.placed_edges = static_cast<long long>(edges.size());
    result.graph = Graph(n, std::move(edges));
    return result;
}

void KroneckerInitiator::validate() const {
    auto in01 = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!in01(a) || !in01(b) || !in01(c))
        throw std::invalid_argument("kronecker initiator: entries must be in [0, 1]");
    if (levels < 0) throw std::invalid_argument("kronecker initiator: negative level count");
}

Graph sample_kronecker(const KroneckerInitiator& init, int n, Rng& rng) {
    init.validate();
    if ((1LL << init.levels) < n)
        throw std::invalid_argument("sample_kronecker: 2^levels must cover n");
    // p(i, j) = a^(#00 levels) * b^(#01 levels) * c^(#11 levels)
    std::vector<double> pow_a(static_cast<std::size_t>(init.levels) + 1, 1.0);
    std::vector<double> pow_b(pow_a), pow_c(pow_a);
    for (int l = 1; l <= init.levels; ++l) {
        pow_a[static_cast<std::size_t>(l)] = pow_a[static_cast<std::size_t>(l - 1)] * init.a;
        pow_b[static_cast<std::size_t>(l)] = pow_b[static_cast<std::size_t>(l - 1)] * init.b;
        pow_c[static_cast<std::size_t>(l)] = pow_c[static_cast<std::size_t>(l - 1)] * init.c;
    }
    std::uint64_t mask = (init.levels >= 64) ? ~0ULL : ((1ULL << init.levels) - 1);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            auto bi = static_cast<std::uint64_t>(i), bj = static_cast<std::uint64_t>(j);
            int c11 = std::popcount(bi & bj);
            int c01 = std::popcount(bi ^ bj);
            int c00 = std::popcount(~bi & ~bj & mask);
            double p = pow_a[static_cast<std::size_t>(c00)] * pow_b[static_cast<std::size_t>(c01)] *
                       pow_c[static_cast<std::size_t>(c11)];
            if (p > 0.0 && rng.uniform() < p) edges.emplace_back(i, j);
        }
    }
    return Graph(n, std::move(edges));
}

void Dendrogram::validate() const {
    if (n_leaves < 1) throw std::invalid_argument("dendrogram: needs at least one leaf");
    if (n_leaves == 1) {
        if (!internals.empty()) throw std::invalid_argument("dendrogram: too many internals");
        return;
    }
    if (static_cast<int>(internals.size()) != n_leaves - 1)
        throw std::invalid_argument("dendrogram: expected n-1 internal nodes");
    for (const auto& node : internals) {
        if (node.p < 0.0 || node.p > 1.0)
            throw std::invalid_argument("dendrogram: probability out of [0, 1]");
        auto check_child = [&](int c) {
            if (c < 0 || c >= n_leaves + static_cast<int>(internals.size()))
                throw std::invalid_argument("dendrogram: child index out of range");
        };
        check_child(node.left);
        check_child(node.right);
    }
}

Graph sample_from_dendrogram(const Dendrogram& d, Rng& rng) {
    d.validate();
    if (d.n_leaves == 1) return Graph::empty(1);

    std::vector<Edge> edges;
    // iterative post-order; each internal yields the leaf list of its subtree
    std::vector<std::vector<int>> leaf_list(d.internals.size());
    std::vector<int> state(d.internals.size(), 0);
    std::vector<int> stack = {d.root};
    auto leaves_of = [&](int child) -> std::vector<int>* {
        return child < d.n_leaves ? nullptr : &leaf_list[static_cast<std::size_t>(child - d.n_leaves)];
    };
    while (!stack.empty()) {
        int r = stack.back();
        auto& node = d.internals[static_cast<std::size_t>(r)];
        int& st = state[static_cast<std::size_t>(r)];
        if (st == 0) {
            st = 1;
            if (node.left >= d.n_leaves) stack.push_back(node.left - d.n_leaves);
        } else if (st == 1) {
            st = 2;
            if (node.right >= d.n_leaves) stack.push_back(node.right - d.n_leaves);
        } else {
            stack.pop_back();
            std::vector<int> left_leaves =
                node.left < d.n_leaves ? std::vector<int>{node.left} : std::move(*leaves_of(node.left));
            std::vector<int> right_leaves =
                node.right < d.n_leaves ? std::vector<int>{node.right} : std::move(*leaves_of(node.right));
            if (node.p > 0.0) {
                std::uint64_t pairs =
                    static_cast<std::uint64_t>(left_leaves.size()) * right_leaves.size();
                std::uint64_t idx = 0;
                bool first = true;
                while (true) {
                    std::uint64_t skip = rng.geometric_skip(node.p);
                    idx += first ? skip : skip + 1;
                    first = false;
                    if (idx >= pairs) break;
                    edges.emplace_back(left_leaves[static_cast<std::size_t>(idx / right_leaves.size())],
                                       right_leaves[static_cast<std::size_t>(idx % right_leaves.size())]);
                }
            }
            left_leaves.insert(left_leaves.end(), right_leaves.begin(), right_leaves.end());
            leaf_list[static_cast<std::size_t>(r)] = std::move(left_leaves);
        }
    }
    return Graph(d.n_leaves, std::move(edges));
}

} // namespace pgb
