#ifndef PGB_METRICS_HPP
#define PGB_METRICS_HPP

#include <array>
#include <span>
#include <string>
#include <vector>

namespace pgb {

enum class MetricId { RE = 1, MRE, KL, HD, KS, AvgF1, MAE, MSE, ARI, AMI, NMI };

constexpr std::array<MetricId, 11> all_metrics = {
    MetricId::RE,  MetricId::MRE, MetricId::KL,  MetricId::HD,  MetricId::KS, MetricId::AvgF1,
    MetricId::MAE, MetricId::MSE, MetricId::ARI, MetricId::AMI, MetricId::NMI};

/// Serialized exactly as the benchmark abbreviations: RE, MRE, KL, HD, KS,
/// Avg-F1, MAE, MSE, ARI, AMI, NMI.
std::string metric_name(MetricId m);
MetricId parse_metric(const std::string& name);

/// NMI/AMI/ARI/Avg-F1 are scores (higher is better); everything else is an
/// error (lower is better).
bool higher_is_better(MetricId m);

/// |true - syn| / max(|true|, 1e-12). The guard keeps a zero truth finite;
/// callers can detect the degenerate denominator with re_denominator_guarded.
double relative_error(double true_v, double syn_v);
bool re_denominator_guarded(double true_v);

/// Mean of |true_i - syn_i| (the benchmark's printed MRE form is an absolute
/// mean, not a per-entry relative one).
double mean_relative_error(std::span<const double> true_vs, std::span<const double> syn_vs);

/// Per-entry relative variant, available behind a config switch.
double mean_relative_error_per_entry(std::span<const double> true_vs,
                                     std::span<const double> syn_vs);

/// KL(true || syn) after padding to a common support, additive smoothing
/// (1e-9) and renormalization of both distributions.
double kl_divergence(std::span<const double> p, std::span<const double> q);

/// (1/sqrt(2)) * ||sqrt(p) - sqrt(q)||_2, in [0, 1].
double hellinger(std::span<const double> p, std::span<const double> q);

/// max |CDF_p - CDF_q|, in [0, 1].
double ks_statistic(std::span<const double> p, std::span<const double> q);

struct PartitionScores {
    double nmi = 0.0;
    double ari = 0.0;
    double ami = 0.0;
    double avg_f1 = 0.0;
    bool id_intersection_used = false; // node sets differed; scored on overlap
};

/// Community-similarity suite. Partitions are label vectors indexed by node
/// ID; when lengths differ the scores are computed on the shared ID prefix
/// and flagged.
PartitionScores partition_scores(std::span<const int> true_p, std::span<const int> syn_p);

double mae(std::span<const double> a, std::span<const double> b);
double mse(std::span<const double> a, std::span<const double> b);

/// Alignment rule for node-score vectors from label-free constructions:
/// descending sort, zero-pad to equal length, then MAE/MSE.
double sorted_mae(std::vector<double> a, std::vector<double> b);
double sorted_mse(std::vector<double> a, std::vector<double> b);

} // namespace pgb

#endif
