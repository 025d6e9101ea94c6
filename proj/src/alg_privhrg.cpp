#include <algorithm>
#include <cmath>
#include <numeric>

#include "pgb/constructors.hpp"
#include "pgb/synthesizers.hpp"
#include "synth_common.hpp"

namespace pgb {

namespace {

// Working dendrogram for the MCMC. Nodes 0..n-1 are leaves, n..2n-2 internal.
struct HrgState {
    int n = 0;
    std::vector<int> parent;        // size 2n-1, -1 at root
    std::vector<int> left, right;   // children, defined for internals
    std::vector<int> subtree;       // leaf count under node (leaves: 1)
    std::vector<long long> cross;   // internals: edges whose LCA is this node
    std::vector<double> term;       // internals: log-likelihood contribution
    int root = -1;
    double logl = 0.0;

    bool is_leaf(int x) const { return x < n; }
};

double likelihood_term(long long e, long long pairs) {
    if (pairs <= 0 || e <= 0 || e >= pairs) return 0.0;
    double p = static_cast<double>(e) / static_cast<double>(pairs);
    return static_cast<double>(pairs) * (p * std::log(p) + (1.0 - p) * std::log(1.0 - p));
}

int build_balanced(HrgState& s, const std::vector<int>& leaves, std::size_t lo, std::size_t hi,
                   int& next_internal) {
    if (hi - lo == 1) return leaves[lo];
    std::size_t mid = lo + (hi - lo) / 2;
    int id = next_internal++;
    int l = build_balanced(s, leaves, lo, mid, next_internal);
    int r = build_balanced(s, leaves, mid, hi, next_internal);
    s.left[static_cast<std::size_t>(id)] = l;
    s.right[static_cast<std::size_t>(id)] = r;
    s.parent[static_cast<std::size_t>(l)] = id;
    s.parent[static_cast<std::size_t>(r)] = id;
    s.subtree[static_cast<std::size_t>(id)] =
        s.subtree[static_cast<std::size_t>(l)] + s.subtree[static_cast<std::size_t>(r)];
    return id;
}

HrgState initial_state(const Graph& g, Rng& rng) {
    const int n = g.node_count();
    HrgState s;
    s.n = n;
    int total = 2 * n - 1;
    s.parent.assign(static_cast<std::size_t>(total), -1);
    s.left.assign(static_cast<std::size_t>(total), -1);
    s.right.assign(static_cast<std::size_t>(total), -1);
    s.subtree.assign(static_cast<std::size_t>(total), 1);
    s.cross.assign(static_cast<std::size_t>(total), 0);
    s.term.assign(static_cast<std::size_t>(total), 0.0);

    std::vector<int> leaves(static_cast<std::size_t>(n));
    std::iota(leaves.begin(), leaves.end(), 0);
    rng.shuffle(leaves);
    int next_internal = n;
    s.root = build_balanced(s, leaves, 0, leaves.size(), next_internal);

    // route every edge to its lowest common ancestor
    std::vector<int> depth(static_cast<std::size_t>(total), 0);
    // roots first: compute depth by walking children from the root
    std::vector<int> stack = {s.root};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        if (s.is_leaf(x)) continue;
        int l = s.left[static_cast<std::size_t>(x)], r = s.right[static_cast<std::size_t>(x)];
        depth[static_cast<std::size_t>(l)] = depth[static_cast<std::size_t>(x)] + 1;
        depth[static_cast<std::size_t>(r)] = depth[static_cast<std::size_t>(x)] + 1;
        stack.push_back(l);
        stack.push_back(r);
    }
    for (const auto& [u, v] : g.edges()) {
        int a = u, b = v;
        while (a != b) {
            if (depth[static_cast<std::size_t>(a)] >= depth[static_cast<std::size_t>(b)])
                a = s.parent[static_cast<std::size_t>(a)];
            else
                b = s.parent[static_cast<std::size_t>(b)];
        }
        s.cross[static_cast<std::size_t>(a)] += 1;
    }
    for (int x = n; x < total; ++x) {
        long long pairs = static_cast<long long>(s.subtree[static_cast<std::size_t>(s.left[static_cast<std::size_t>(x)])]) *
                          s.subtree[static_cast<std::size_t>(s.right[static_cast<std::size_t>(x)])];
        s.term[static_cast<std::size_t>(x)] = likelihood_term(s.cross[static_cast<std::size_t>(x)], pairs);
        s.logl += s.term[static_cast<std::size_t>(x)];
    }
    return s;
}

void collect_leaves(const HrgState& s, int node, std::vector<int>& out) {
    std::vector<int> stack = {node};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        if (s.is_leaf(x)) {
            out.push_back(x);
        } else {
            stack.push_back(s.left[static_cast<std::size_t>(x)]);
            stack.push_back(s.right[static_cast<std::size_t>(x)]);
        }
    }
}

} // namespace

// PrivHRG: stage 1 samples a dendrogram with MCMC whose stationary
// distribution is the exponential mechanism over the HRG log-likelihood;
// stage 2 perturbs each internal node's crossing-edge count with Laplace
// noise (L1 sensitivity 1: an edge has exactly one LCA) and the output is
// sampled from the noisy connection probabilities.
SynthesisRecord privhrg_generate(const Graph& g, const PrivacyBudget& budget, std::uint64_t seed,
                                 const AlgorithmConfig& cfg) {
    budget.validate();
    const int n = g.node_count();
    if (n < 2) throw std::invalid_argument("PrivHRG requires at least two nodes");

    SynthesisRecord record;
    record.ledger =
        split_budget(budget, synth_detail::resolve_split(Algorithm::PrivHrg, cfg.budget_split));
    synth_detail::StageClock clock(record);

    clock.begin("dendrogram_mcmc");
    Rng mcmc_rng = Rng(seed).derive("dendrogram_mcmc");
    HrgState s = initial_state(g, mcmc_rng);

    // per-edge log-likelihood sensitivity bound: |f(e+1) - f(e)| <= ln(LR) + 1
    // with LR <= (n/2)^2
    double delta_l = 2.0 * std::log(std::max(2.0, static_cast<double>(n) / 2.0)) + 1.0;
    record.summaries["loglik_sensitivity"] = delta_l;
    double eps1 = record.ledger.stage("dendrogram_mcmc").epsilon;
    double accept_coef = eps1 / (2.0 * delta_l);

    long long max_steps = cfg.mcmc_max_steps >= 0
                              ? cfg.mcmc_max_steps
                              : std::min<long long>(1000000,
                                                    200LL * n * std::max(1, (int)std::ceil(std::log2(n))));
    const long long sweep = std::max(1, n);
    const long long plateau_window = sweep * n; // n consecutive sweeps
    double best_logl = s.logl;
    long long since_improvement = 0;
    long long steps = 0;
    bool plateau = false;

    std::vector<std::uint32_t> mark(static_cast<std::size_t>(n), 0);
    std::uint32_t epoch = 0;
    std::vector<int> leaves_a, leaves_b, leaves_s;

    while (steps < max_steps && n > 2) {
        ++steps;
        // internal node other than the root
        int r = n + static_cast<int>(mcmc_rng.uniform_index(static_cast<std::uint64_t>(n - 1)));
        if (r == s.root) continue;
        int p = s.parent[static_cast<std::size_t>(r)];
        int a = s.left[static_cast<std::size_t>(r)];
        int b = s.right[static_cast<std::size_t>(r)];
        int sib = s.left[static_cast<std::size_t>(p)] == r ? s.right[static_cast<std::size_t>(p)]
                                                           : s.left[static_cast<std::size_t>(p)];

        leaves_a.clear(); leaves_b.clear(); leaves_s.clear();
        collect_leaves(s, a, leaves_a);
        collect_leaves(s, b, leaves_b);
        collect_leaves(s, sib, leaves_s);
        epoch += 4;
        for (int u : leaves_a) mark[static_cast<std::size_t>(u)] = epoch;
        for (int u : leaves_b) mark[static_cast<std::size_t>(u)] = epoch + 1;
        for (int u : leaves_s) mark[static_cast<std::size_t>(u)] = epoch + 2;

        long long e_ab = 0, e_as = 0, e_bs = 0;
        for (int u : leaves_a) {
            for (int v : g.neighbors(u)) {
                std::uint32_t m = mark[static_cast<std::size_t>(v)];
                if (m == epoch + 1) ++e_ab;
                else if (m == epoch + 2) ++e_as;
            }
        }
        for (int u : leaves_b)
            for (int v : g.neighbors(u))
                if (mark[static_cast<std::size_t>(v)] == epoch + 2) ++e_bs;

        long long na = leaves_a.size(), nb = leaves_b.size(), ns = leaves_s.size();
        bool swap_with_b = mcmc_rng.bernoulli(0.5);
        // swap_with_b:  r = (a, sib), p = (r, b)
        // !swap_with_b: r = (sib, b), p = (a, r)
        long long new_er = swap_with_b ? e_as : e_bs;
        long long new_ep = swap_with_b ? e_ab + e_bs : e_ab + e_as;
        long long new_r_pairs = swap_with_b ? na * ns : ns * nb;
        long long new_p_pairs = swap_with_b ? (na + ns) * nb : (ns + nb) * na;

        double new_term_r = likelihood_term(new_er, new_r_pairs);
        double new_term_p = likelihood_term(new_ep, new_p_pairs);
        double delta = new_term_r + new_term_p - s.term[static_cast<std::size_t>(r)] -
                       s.term[static_cast<std::size_t>(p)];
        if (delta < 0.0 && mcmc_rng.uniform() >= std::exp(accept_coef * delta)) continue;

        // apply the rearrangement
        int moved_out = swap_with_b ? b : a; // leaves r, becomes p's other child
        int moved_in = sib;                  // joins r
        if (swap_with_b) {
            s.left[static_cast<std::size_t>(r)] = a;
            s.right[static_cast<std::size_t>(r)] = moved_in;
        } else {
            s.left[static_cast<std::size_t>(r)] = moved_in;
            s.right[static_cast<std::size_t>(r)] = b;
        }
        s.parent[static_cast<std::size_t>(moved_in)] = r;
        if (s.left[static_cast<std::size_t>(p)] == r)
            s.right[static_cast<std::size_t>(p)] = moved_out;
        else
            s.left[static_cast<std::size_t>(p)] = moved_out;
        // keep r in its original child slot of p; moved_out takes the other
        s.parent[static_cast<std::size_t>(moved_out)] = p;
        s.subtree[static_cast<std::size_t>(r)] = static_cast<int>(swap_with_b ? na + ns : ns + nb);
        s.cross[static_cast<std::size_t>(r)] = new_er;
        s.cross[static_cast<std::size_t>(p)] = new_ep;
        s.logl += new_term_r + new_term_p - s.term[static_cast<std::size_t>(r)] -
                  s.term[static_cast<std::size_t>(p)];
        s.term[static_cast<std::size_t>(r)] = new_term_r;
        s.term[static_cast<std::size_t>(p)] = new_term_p;

        if (s.logl > best_logl + 1e-6) {
            best_logl = s.logl;
            since_improvement = 0;
        } else if (++since_improvement >= plateau_window) {
            plateau = true;
            break;
        }
    }
    record.summaries["mcmc_steps"] = static_cast<double>(steps);
    record.summaries["mcmc_loglik"] = s.logl;
    if (steps >= max_steps && !plateau && n > 2)
        record.warnings.push_back("mcmc step cap reached before likelihood plateau");
    clock.end();

    clock.begin("edge_counts");
    Rng noise_rng = Rng(seed).derive("edge_counts");
    double eps2 = record.ledger.stage("edge_counts").epsilon;
    Dendrogram d;
    d.n_leaves = n;
    d.internals.resize(static_cast<std::size_t>(n - 1));
    auto sens = SensitivityBound::global(1.0);
    for (int x = n; x < 2 * n - 1; ++x) {
        auto& node = d.internals[static_cast<std::size_t>(x - n)];
        node.left = s.left[static_cast<std::size_t>(x)];
        node.right = s.right[static_cast<std::size_t>(x)];
        long long pairs = static_cast<long long>(s.subtree[static_cast<std::size_t>(node.left)] ) *
                          s.subtree[static_cast<std::size_t>(node.right)];
        // subtree[] holds leaf counts for every node id (leaves are 1)
        double noisy = static_cast<double>(s.cross[static_cast<std::size_t>(x)]) +
                       laplace_noise(sens, eps2, noise_rng);
        node.p = pairs > 0 ? std::clamp(noisy / static_cast<double>(pairs), 0.0, 1.0) : 0.0;
    }
    d.root = s.root - n;
    clock.end();

    clock.begin("sample");
    Rng sample_rng = Rng(seed).derive("sample");
    record.output = sample_from_dendrogram(d, sample_rng);
    clock.end();
    return record;
}

} // namespace pgb
