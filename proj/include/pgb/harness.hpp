#ifndef PGB_HARNESS_HPP
#define PGB_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "pgb/dataset.hpp"
#include "pgb/metrics.hpp"
#include "pgb/queries.hpp"
#include "pgb/synthesizers.hpp"

namespace pgb {

struct ExperimentGrid {
    std::vector<Algorithm> algorithms;
    std::vector<DatasetDescriptor> datasets;
    std::vector<double> epsilons = {0.1, 0.5, 1.0, 2.0, 5.0, 10.0};
    std::vector<QueryId> queries{all_queries.begin(), all_queries.end()};
    int repetitions = 10;
    std::uint64_t root_seed = 0;
    int workers = 1;
    double delta = 0.01; // applied to the smooth-sensitivity algorithms only
    std::map<Algorithm, AlgorithmConfig> alg_configs;

    const AlgorithmConfig& config_for(Algorithm a) const;
    void validate() const; // throws with every problem listed
};

/// Default query -> metric map (the remaining applicable metrics are emitted
/// as supplementary columns).
MetricId primary_metric(QueryId q);
std::vector<MetricId> supplementary_metrics(QueryId q);

struct MetricEntry {
    QueryId query;
    MetricId metric;
    double value = 0.0;
    bool primary = false;
};

struct CellResult {
    std::string algorithm;
    std::string dataset;
    double epsilon = 0.0;
    int repetition = 0;
    double wall_s = 0.0;
    std::uint64_t peak_bytes = 0;
    std::vector<MetricEntry> metrics;
    std::vector<std::string> warnings;
    bool failed = false;
    std::string failure;
    BudgetLedger ledger;
};

struct AggregateRow {
    std::string algorithm;
    std::string dataset;
    double epsilon = 0.0;
    QueryId query;
    MetricId metric;
    bool primary = false;
    double mean = 0.0;
    double sd = 0.0;
    int reps = 0;
};

struct BestCountTable {
    // C_A(G, eps): queries won per (algorithm, dataset, epsilon)
    std::map<std::tuple<double, std::string, std::string>, int> overall; // (eps, alg, dataset)
    // C_A(Q_i): (dataset, epsilon) cells won per (algorithm, query)
    std::map<std::pair<std::string, QueryId>, int> by_query;
};

struct GridRunInfo {
    /// true-side query failures: dataset -> (query, reason); those queries are
    /// skipped for every cell of that dataset
    std::map<std::string, std::vector<std::pair<QueryId, std::string>>> dropped_queries;
    /// dataset load failures
    std::map<std::string, std::string> failed_datasets;
};

/// One synthesis + full query scoring per (algorithm, dataset, epsilon,
/// repetition). Cell failures are recorded and the grid continues. The cell
/// list is returned in deterministic sorted order regardless of worker count.
std::vector<CellResult> run_grid(const ExperimentGrid& grid, GridRunInfo* info = nullptr);

/// Per-(algorithm, dataset, epsilon, query, metric) mean and standard
/// deviation over repetitions.
std::vector<AggregateRow> aggregate_means(std::span<const CellResult> cells);

/// Direction-aware best counting over primary metrics; ties within 1e-12
/// credit every tied algorithm. Throws when some algorithm is missing from a
/// covered (dataset, epsilon, query) group. flip_direction inverts every
/// better-direction (used with negated columns this must reproduce the same
/// table).
BestCountTable best_counts(std::span<const AggregateRow> rows, bool flip_direction = false);

struct ResourceUsage {
    double wall_s = 0.0;
    std::uint64_t peak_bytes = 0;
};

/// Monotonic wall time + allocation high-water around the thunk.
ResourceUsage measure_resources(const std::function<void()>& thunk);

/// Emits cells.csv, aggregate.csv, best_counts_overall.csv,
/// best_counts_by_query.csv and manifest.json under out_dir.
void write_report(std::span<const CellResult> cells, std::span<const AggregateRow> aggregates,
                  const BestCountTable& best, const ExperimentGrid& grid, const GridRunInfo& info,
                  const std::string& out_dir);

/// Reads a cells.csv produced by write_report (for re-aggregation).
std::vector<CellResult> read_cells_csv(const std::string& path);

/// Shortest round-trip decimal formatting used in every report file.
std::string format_double(double v);

/// Cell RNG seed: hash of (root, algorithm, dataset, epsilon, repetition).
std::uint64_t cell_seed(std::uint64_t root, const std::string& algorithm,
                        const std::string& dataset, double epsilon, int repetition);

} // namespace pgb

#endif
