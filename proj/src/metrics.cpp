#include "pgb/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pgb {

std::string metric_name(MetricId m) {
    switch (m) {
        case MetricId::RE: return "RE";
        case MetricId::MRE: return "MRE";
        case MetricId::KL: return "KL";
        case MetricId::HD: return "HD";
        case MetricId::KS: return "KS";
        case MetricId::AvgF1: return "Avg-F1";
        case MetricId::MAE: return "MAE";
        case MetricId::MSE: return "MSE";
        case MetricId::ARI: return "ARI";
        case MetricId::AMI: return "AMI";
        case MetricId::NMI: return "NMI";
    }
    throw std::invalid_argument("unknown metric id");
}

MetricId parse_metric(const std::string& name) {
    for (MetricId m : all_metrics)
        if (metric_name(m) == name) return m;
    throw std::invalid_argument("unknown metric: " + name);
}

bool higher_is_better(MetricId m) {
    switch (m) {
        case MetricId::NMI:
        case MetricId::AMI:
        case MetricId::ARI:
        case MetricId::AvgF1:
            return true;
        default:
            return false;
    }
}

double relative_error(double true_v, double syn_v) {
    return std::fabs(true_v - syn_v) / std::max(std::fabs(true_v), 1e-12);
}

bool re_denominator_guarded(double true_v) { return std::fabs(true_v) < 1e-12; }

double mean_relative_error(std::span<const double> true_vs, std::span<const double> syn_vs) {
    if (true_vs.size() != syn_vs.size() || true_vs.empty())
        throw std::invalid_argument("mean_relative_error: length mismatch or empty input");
    double sum = 0.0;
    for (std::size_t i = 0; i < true_vs.size(); ++i) sum += std::fabs(true_vs[i] - syn_vs[i]);
    return sum / static_cast<double>(true_vs.size());
}

double mean_relative_error_per_entry(std::span<const double> true_vs,
                                     std::span<const double> syn_vs) {
    if (true_vs.size() != syn_vs.size() || true_vs.empty())
        throw std::invalid_argument("mean_relative_error: length mismatch or empty input");
    double sum = 0.0;
    for (std::size_t i = 0; i < true_vs.size(); ++i) sum += relative_error(true_vs[i], syn_vs[i]);
    return sum / static_cast<double>(true_vs.size());
}

namespace {

// pad to a common support
std::pair<std::vector<double>, std::vector<double>> aligned(std::span<const double> p,
                                                            std::span<const double> q) {
    std::size_t len = std::max(p.size(), q.size());
    std::vector<double> a(len, 0.0), b(len, 0.0);
    std::copy(p.begin(), p.end(), a.begin());
    std::copy(q.begin(), q.end(), b.begin());
    return {std::move(a), std::move(b)};
}

void smooth_and_normalize(std::vector<double>& v) {
    double sum = 0.0;
    for (double& x : v) {
        x += 1e-9;
        sum += x;
    }
    for (double& x : v) x /= sum;
}

} // namespace

double kl_divergence(std::span<const double> p, std::span<const double> q) {
    auto [a, b] = aligned(p, q);
    smooth_and_normalize(a);
    smooth_and_normalize(b);
    double kl = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) kl += a[i] * std::log(a[i] / b[i]);
    return std::max(kl, 0.0);
}

double hellinger(std::span<const double> p, std::span<const double> q) {
    auto [a, b] = aligned(p, q);
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = std::sqrt(a[i]) - std::sqrt(b[i]);
        acc += d * d;
    }
    return std::min(1.0, std::sqrt(acc) / std::sqrt(2.0));
}

double ks_statistic(std::span<const double> p, std::span<const double> q) {
    auto [a, b] = aligned(p, q);
    double cdf_a = 0.0, cdf_b = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        cdf_a += a[i];
        cdf_b += b[i];
        worst = std::max(worst, std::fabs(cdf_a - cdf_b));
    }
    return std::min(1.0, worst);
}

namespace {

struct Contingency {
    std::vector<std::vector<long long>> cell; // rows: true labels, cols: syn labels
    std::vector<long long> row_sum, col_sum;
    long long total = 0;
};

Contingency contingency_table(std::span<const int> a, std::span<const int> b) {
    int ra = 0, rb = 0;
    for (int x : a) ra = std::max(ra, x + 1);
    for (int x : b) rb = std::max(rb, x + 1);
    Contingency c;
    c.cell.assign(static_cast<std::size_t>(ra), std::vector<long long>(static_cast<std::size_t>(rb), 0));
    c.row_sum.assign(static_cast<std::size_t>(ra), 0);
    c.col_sum.assign(static_cast<std::size_t>(rb), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        c.cell[static_cast<std::size_t>(a[i])][static_cast<std::size_t>(b[i])] += 1;
        c.row_sum[static_cast<std::size_t>(a[i])] += 1;
        c.col_sum[static_cast<std::size_t>(b[i])] += 1;
        c.total += 1;
    }
    return c;
}

double entropy(const std::vector<long long>& counts, long long total) {
    double h = 0.0;
    for (long long c : counts) {
        if (c == 0) continue;
        double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log(p);
    }
    return h;
}

double mutual_information(const Contingency& c) {
    double mi = 0.0;
    double total = static_cast<double>(c.total);
    for (std::size_t i = 0; i < c.cell.size(); ++i) {
        for (std::size_t j = 0; j < c.cell[i].size(); ++j) {
            long long nij = c.cell[i][j];
            if (nij == 0) continue;
            double pij = static_cast<double>(nij) / total;
            double pi = static_cast<double>(c.row_sum[i]) / total;
            double pj = static_cast<double>(c.col_sum[j]) / total;
            mi += pij * std::log(pij / (pi * pj));
        }
    }
    return std::max(mi, 0.0);
}

// Expected mutual information under the hypergeometric permutation model.
double expected_mutual_information(const Contingency& c) {
    const long long n = c.total;
    double emi = 0.0;
    double log_n = std::log(static_cast<double>(n));
    for (long long ai : c.row_sum) {
        if (ai == 0) continue;
        for (long long bj : c.col_sum) {
            if (bj == 0) continue;
            long long lo = std::max<long long>(1, ai + bj - n);
            long long hi = std::min(ai, bj);
            for (long long nij = lo; nij <= hi; ++nij) {
                double log_term = std::log(static_cast<double>(nij)) + log_n -
                                  std::log(static_cast<double>(ai)) -
                                  std::log(static_cast<double>(bj));
                // log P[nij] from the hypergeometric pmf
                double log_p = std::lgamma(static_cast<double>(ai + 1)) +
                               std::lgamma(static_cast<double>(bj + 1)) +
                               std::lgamma(static_cast<double>(n - ai + 1)) +
                               std::lgamma(static_cast<double>(n - bj + 1)) -
                               std::lgamma(static_cast<double>(n + 1)) -
                               std::lgamma(static_cast<double>(nij + 1)) -
                               std::lgamma(static_cast<double>(ai - nij + 1)) -
                               std::lgamma(static_cast<double>(bj - nij + 1)) -
                               std::lgamma(static_cast<double>(n - ai - bj + nij + 1));
                emi += std::exp(log_p) * (static_cast<double>(nij) / static_cast<double>(n)) * log_term;
            }
        }
    }
    return emi;
}

double comb2(long long x) { return 0.5 * static_cast<double>(x) * static_cast<double>(x - 1); }

} // namespace

PartitionScores partition_scores(std::span<const int> true_p, std::span<const int> syn_p) {
    if (true_p.empty() || syn_p.empty())
        throw std::invalid_argument("partition_scores: empty partition");
    PartitionScores out;
    std::size_t len = std::min(true_p.size(), syn_p.size());
    out.id_intersection_used = true_p.size() != syn_p.size();
    Contingency c = contingency_table(true_p.subspan(0, len), syn_p.subspan(0, len));

    double h_true = entropy(c.row_sum, c.total);
    double h_syn = entropy(c.col_sum, c.total);
    double mi = mutual_information(c);

    // both partitions trivial (single cluster): identical by definition
    if (h_true == 0.0 && h_syn == 0.0) {
        out.nmi = out.ami = 1.0;
    } else {
        out.nmi = 2.0 * mi / (h_true + h_syn);
        double emi = expected_mutual_information(c);
        double denom = 0.5 * (h_true + h_syn) - emi;
        out.ami = std::fabs(denom) < 1e-15 ? 0.0 : (mi - emi) / denom;
    }

    // adjusted Rand
    double sum_cells = 0.0;
    for (const auto& row : c.cell)
        for (long long nij : row) sum_cells += comb2(nij);
    double sum_rows = 0.0, sum_cols = 0.0;
    for (long long r : c.row_sum) sum_rows += comb2(r);
    for (long long s : c.col_sum) sum_cols += comb2(s);
    double pairs = comb2(c.total);
    double expected = pairs > 0.0 ? sum_rows * sum_cols / pairs : 0.0;
    double max_index = 0.5 * (sum_rows + sum_cols);
    if (std::fabs(max_index - expected) < 1e-15) {
        // degenerate: all singletons or one cluster on both sides
        out.ari = (sum_cells == max_index) ? 1.0 : 0.0;
    } else {
        out.ari = (sum_cells - expected) / (max_index - expected);
    }

    // average F1: best-match per community, both directions
    auto direction = [&](bool rows) {
        double acc = 0.0;
        std::size_t outer = rows ? c.row_sum.size() : c.col_sum.size();
        std::size_t counted = 0;
        for (std::size_t i = 0; i < outer; ++i) {
            long long size_i = rows ? c.row_sum[i] : c.col_sum[i];
            if (size_i == 0) continue;
            double best = 0.0;
            std::size_t inner = rows ? c.col_sum.size() : c.row_sum.size();
            for (std::size_t j = 0; j < inner; ++j) {
                long long overlap = rows ? c.cell[i][j] : c.cell[j][i];
                if (overlap == 0) continue;
                long long size_j = rows ? c.col_sum[j] : c.row_sum[j];
                double f1 = 2.0 * static_cast<double>(overlap) /
                            static_cast<double>(size_i + size_j);
                best = std::max(best, f1);
            }
            acc += best;
            ++counted;
        }
        return counted ? acc / static_cast<double>(counted) : 0.0;
    };
    out.avg_f1 = 0.5 * (direction(true) + direction(false));
    return out;
}

double mae(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty())
        throw std::invalid_argument("mae: length mismatch or empty input");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::fabs(a[i] - b[i]);
    return sum / static_cast<double>(a.size());
}

double mse(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty())
        throw std::invalid_argument("mse: length mismatch or empty input");
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - b[i]) * (a[i] - b[i]);
    return sum / static_cast<double>(a.size());
}

namespace {

void sort_and_pad(std::vector<double>& a, std::vector<double>& b) {
    std::sort(a.begin(), a.end(), std::greater<>());
    std::sort(b.begin(), b.end(), std::greater<>());
    std::size_t len = std::max(a.size(), b.size());
    a.resize(len, 0.0);
    b.resize(len, 0.0);
}

} // namespace

double sorted_mae(std::vector<double> a, std::vector<double> b) {
    sort_and_pad(a, b);
    return mae(a, b);
}

double sorted_mse(std::vector<double> a, std::vector<double> b) {
    sort_and_pad(a, b);
    return mse(a, b);
}

} // namespace pgb
