#include "pgb/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "pgb/memtrack.hpp"
#include "pgb/rng.hpp"

namespace pgb {

const AlgorithmConfig& ExperimentGrid::config_for(Algorithm a) const {
    static const AlgorithmConfig defaults;
    auto it = alg_configs.find(a);
    return it == alg_configs.end() ? defaults : it->second;
}

void ExperimentGrid::validate() const {
    std::vector<std::string> problems;
    if (algorithms.empty()) problems.push_back("no algorithms selected");
    if (datasets.empty()) problems.push_back("no datasets selected");
    if (epsilons.empty()) problems.push_back("no epsilon values");
    for (double e : epsilons)
        if (e <= 0.0) problems.push_back("epsilon must be > 0, got " + format_double(e));
    if (queries.empty()) problems.push_back("no queries selected");
    if (repetitions < 1) problems.push_back("repetitions must be >= 1");
    if (workers < 1) problems.push_back("workers must be >= 1");
    if (delta < 0.0 || delta >= 1.0) problems.push_back("delta must be in [0, 1)");
    for (Algorithm a : algorithms) {
        if (requires_delta(a) && delta <= 0.0)
            problems.push_back(algorithm_name(a) + " needs delta > 0");
        const auto& cfg = config_for(a);
        if (!cfg.budget_split.empty()) {
            try {
                auto shares = synth_detail::resolve_split(a, cfg.budget_split);
                double sum = 0.0;
                for (const auto& [label, f] : shares) {
                    if (f <= 0.0) problems.push_back(algorithm_name(a) + ": non-positive budget fraction");
                    sum += f;
                }
                if (std::fabs(sum - 1.0) > 1e-12)
                    problems.push_back(algorithm_name(a) + ": budget fractions must sum to 1");
            } catch (const std::exception& e) {
                problems.push_back(e.what());
            }
        }
    }
    for (const auto& d : datasets) {
        if (!valid_type_tag(d.type_tag))
            problems.push_back("dataset " + d.name + ": unknown type tag " + d.type_tag);
        if (is_builtin_source(d.source)) {
            auto tags = builtin_tags();
            std::string tag = d.source.substr(8);
            if (std::find(tags.begin(), tags.end(), tag) == tags.end())
                problems.push_back("dataset " + d.name + ": unknown builtin tag " + tag);
        } else if (!std::filesystem::exists(d.source)) {
            problems.push_back("dataset " + d.name + ": file not found: " + d.source);
        }
    }
    if (!problems.empty()) {
        std::string all = "invalid experiment grid:";
        for (const auto& p : problems) all += "\n  - " + p;
        throw std::invalid_argument(all);
    }
}

MetricId primary_metric(QueryId q) {
    switch (q) {
        case QueryId::DegreeDistribution:
        case QueryId::DistanceDistribution:
            return MetricId::KL;
        case QueryId::CommunityDetection:
            return MetricId::NMI;
        case QueryId::EigenvectorCentrality:
            return MetricId::MAE;
        default:
            return MetricId::RE;
    }
}

std::vector<MetricId> supplementary_metrics(QueryId q) {
    switch (q) {
        case QueryId::NodeCount:
        case QueryId::EdgeCount:
        case QueryId::Triangles:
        case QueryId::Gcc:
            return {MetricId::MRE};
        case QueryId::Acc:
            return {MetricId::MRE, MetricId::MSE};
        case QueryId::DegreeDistribution:
            return {MetricId::HD, MetricId::KS};
        case QueryId::DistanceDistribution:
            return {MetricId::RE}; // relative error of the mean distance
        case QueryId::CommunityDetection:
            return {MetricId::AvgF1, MetricId::ARI, MetricId::AMI};
        default:
            return {};
    }
}

std::uint64_t cell_seed(std::uint64_t root, const std::string& algorithm,
                        const std::string& dataset, double epsilon, int repetition) {
    std::uint64_t s = mix_seed(root, algorithm);
    s = mix_seed(s, dataset);
    s = mix_seed(s, epsilon);
    s = mix_seed(s, static_cast<std::uint64_t>(repetition));
    return s;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf;
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

ResourceUsage measure_resources(const std::function<void()>& thunk) {
    memtrack::reset_thread();
    auto start = std::chrono::steady_clock::now();
    thunk();
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    return {elapsed.count(), memtrack::thread_peak_bytes()};
}

namespace {

double distribution_mean(const std::vector<double>& dist) {
    double mean = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) mean += static_cast<double>(i) * dist[i];
    return mean;
}

double worst_value(MetricId m) {
    return higher_is_better(m) ? 0.0 : std::numeric_limits<double>::infinity();
}

void push_entry(CellResult& cell, QueryId q, MetricId m, double v, bool primary) {
    cell.metrics.push_back({q, m, v, primary});
}

// All metric columns for one query; syn == nullptr means the query failed on
// the synthetic graph and every column takes its worst in-range value.
void score_query(CellResult& cell, QueryId q, const QueryValue& truth, const QueryValue* syn) {
    MetricId prim = primary_metric(q);
    std::vector<MetricId> extra = supplementary_metrics(q);
    if (!syn) {
        push_entry(cell, q, prim, worst_value(prim), true);
        for (MetricId m : extra) push_entry(cell, q, m, worst_value(m), false);
        return;
    }
    switch (truth.kind) {
        case QueryValue::Kind::Scalar: {
            if (re_denominator_guarded(truth.scalar))
                cell.warnings.push_back("degenerate-denominator:" + query_code(q));
            push_entry(cell, q, MetricId::RE, relative_error(truth.scalar, syn->scalar), true);
            for (MetricId m : extra) {
                double diff = std::fabs(truth.scalar - syn->scalar);
                push_entry(cell, q, m, m == MetricId::MSE ? diff * diff : diff, false);
            }
            break;
        }
        case QueryValue::Kind::Distribution: {
            push_entry(cell, q, MetricId::KL, kl_divergence(truth.values, syn->values), true);
            for (MetricId m : extra) {
                double v = 0.0;
                if (m == MetricId::HD) v = hellinger(truth.values, syn->values);
                else if (m == MetricId::KS) v = ks_statistic(truth.values, syn->values);
                else if (m == MetricId::RE)
                    v = relative_error(distribution_mean(truth.values), distribution_mean(syn->values));
                push_entry(cell, q, m, v, false);
            }
            break;
        }
        case QueryValue::Kind::Partition: {
            PartitionScores ps = partition_scores(truth.labels, syn->labels);
            if (ps.id_intersection_used)
                cell.warnings.push_back("partition-id-intersection:" + query_code(q));
            push_entry(cell, q, MetricId::NMI, ps.nmi, true);
            push_entry(cell, q, MetricId::AvgF1, ps.avg_f1, false);
            push_entry(cell, q, MetricId::ARI, ps.ari, false);
            push_entry(cell, q, MetricId::AMI, ps.ami, false);
            break;
        }
        case QueryValue::Kind::NodeScores: {
            // sorted alignment: constructions like DP-dK are not node-aligned
            push_entry(cell, q, MetricId::MAE, sorted_mae(truth.values, syn->values), true);
            break;
        }
    }
}

struct CellSpec {
    Algorithm algorithm;
    std::size_t dataset_index;
    double epsilon;
    int repetition;
};

struct TrueSide {
    bool loaded = false;
    std::string load_error;
    Graph graph;
    std::map<QueryId, QueryValue> values;
    std::set<QueryId> dropped;
};

} // namespace

std::vector<CellResult> run_grid(const ExperimentGrid& grid, GridRunInfo* info) {
    grid.validate();
    GridRunInfo local_info;
    GridRunInfo& run_info = info ? *info : local_info;

    // true side, cached once per dataset
    std::vector<TrueSide> truth(grid.datasets.size());
    for (std::size_t d = 0; d < grid.datasets.size(); ++d) {
        const auto& ds = grid.datasets[d];
        try {
            truth[d].graph = load_dataset(ds);
            truth[d].loaded = true;
        } catch (const std::exception& e) {
            truth[d].load_error = e.what();
            run_info.failed_datasets[ds.name] = e.what();
            continue;
        }
        std::uint64_t true_seed = mix_seed(mix_seed(grid.root_seed, ds.name), "true");
        for (QueryId q : grid.queries) {
            try {
                truth[d].values[q] = run_query(q, truth[d].graph, true_seed);
            } catch (const std::exception& e) {
                truth[d].dropped.insert(q);
                run_info.dropped_queries[ds.name].emplace_back(q, e.what());
            }
        }
    }

    std::vector<CellSpec> specs;
    for (Algorithm a : grid.algorithms)
        for (std::size_t d = 0; d < grid.datasets.size(); ++d)
            for (double eps : grid.epsilons)
                for (int rep = 0; rep < grid.repetitions; ++rep)
                    specs.push_back({a, d, eps, rep});

    std::vector<CellResult> cells(specs.size());
    std::atomic<std::size_t> next{0};
    auto run_one = [&](const CellSpec& spec) {
        const auto& ds = grid.datasets[spec.dataset_index];
        const TrueSide& t = truth[spec.dataset_index];
        CellResult cell;
        cell.algorithm = algorithm_name(spec.algorithm);
        cell.dataset = ds.name;
        cell.epsilon = spec.epsilon;
        cell.repetition = spec.repetition;
        if (!t.loaded) {
            cell.failed = true;
            cell.failure = "dataset load failed: " + t.load_error;
            return cell;
        }
        std::uint64_t seed = cell_seed(grid.root_seed, cell.algorithm, cell.dataset, spec.epsilon,
                                       spec.repetition);
        PrivacyBudget budget{spec.epsilon, requires_delta(spec.algorithm) ? grid.delta : 0.0};
        SynthesisRecord record;
        try {
            ResourceUsage usage = measure_resources([&] {
                record = generate(spec.algorithm, t.graph, budget, seed, grid.config_for(spec.algorithm));
            });
            cell.wall_s = usage.wall_s;
            cell.peak_bytes = usage.peak_bytes;
        } catch (const std::exception& e) {
            cell.failed = true;
            cell.failure = e.what();
            return cell;
        }
        cell.warnings = record.warnings;
        cell.ledger = record.ledger;
        for (QueryId q : grid.queries) {
            if (t.dropped.count(q)) continue;
            const QueryValue& true_value = t.values.at(q);
            std::uint64_t query_seed = mix_seed(seed, "query-" + query_code(q));
            try {
                QueryValue syn = run_query(q, record.output, query_seed);
                if (!syn.note.empty()) cell.warnings.push_back(query_code(q) + ":" + syn.note);
                score_query(cell, q, true_value, &syn);
            } catch (const QueryError& e) {
                cell.warnings.push_back("query-failed:" + query_code(q) + ":" + e.what());
                score_query(cell, q, true_value, nullptr);
            }
        }
        return cell;
    };

    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= specs.size()) break;
            cells[i] = run_one(specs[i]);
        }
    };
    int workers = std::min<int>(grid.workers, static_cast<int>(specs.size()));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::sort(cells.begin(), cells.end(), [](const CellResult& a, const CellResult& b) {
        return std::tie(a.algorithm, a.dataset, a.epsilon, a.repetition) <
               std::tie(b.algorithm, b.dataset, b.epsilon, b.repetition);
    });
    return cells;
}

std::vector<AggregateRow> aggregate_means(std::span<const CellResult> cells) {
    using Key = std::tuple<std::string, std::string, double, QueryId, MetricId, bool>;
    std::map<Key, std::vector<double>> groups;
    for (const auto& cell : cells) {
        if (cell.failed) continue;
        for (const auto& entry : cell.metrics)
            groups[{cell.algorithm, cell.dataset, cell.epsilon, entry.query, entry.metric,
                    entry.primary}]
                .push_back(entry.value);
    }
    std::vector<AggregateRow> rows;
    rows.reserve(groups.size());
    for (const auto& [key, values] : groups) {
        AggregateRow row;
        row.algorithm = std::get<0>(key);
        row.dataset = std::get<1>(key);
        row.epsilon = std::get<2>(key);
        row.query = std::get<3>(key);
        row.metric = std::get<4>(key);
        row.primary = std::get<5>(key);
        row.reps = static_cast<int>(values.size());
        double sum = 0.0;
        for (double v : values) sum += v;
        row.mean = sum / static_cast<double>(values.size());
        if (std::isfinite(row.mean)) {
            double acc = 0.0;
            for (double v : values) acc += (v - row.mean) * (v - row.mean);
            row.sd = std::sqrt(acc / static_cast<double>(values.size()));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

BestCountTable best_counts(std::span<const AggregateRow> rows, bool flip_direction) {
    std::set<std::string> algorithms;
    for (const auto& row : rows)
        if (row.primary) algorithms.insert(row.algorithm);

    using GroupKey = std::tuple<std::string, double, QueryId>; // dataset, eps, query
    std::map<GroupKey, std::vector<std::pair<std::string, double>>> groups;
    for (const auto& row : rows)
        if (row.primary)
            groups[{row.dataset, row.epsilon, row.query}].emplace_back(row.algorithm, row.mean);

    BestCountTable table;
    // prefill zeros so losing algorithms still appear in the tables
    for (const auto& [key, entries] : groups) {
        for (const auto& alg : algorithms) {
            table.overall.try_emplace({std::get<1>(key), alg, std::get<0>(key)}, 0);
            table.by_query.try_emplace({alg, std::get<2>(key)}, 0);
        }
    }

    std::vector<std::string> missing;
    for (const auto& [key, entries] : groups) {
        if (entries.size() != algorithms.size()) {
            for (const auto& alg : algorithms) {
                bool found = false;
                for (const auto& [a, v] : entries)
                    if (a == alg) { found = true; break; }
                if (!found)
                    missing.push_back(alg + "/" + std::get<0>(key) + "/eps=" +
                                      format_double(std::get<1>(key)) + "/" +
                                      query_code(std::get<2>(key)));
            }
            continue;
        }
        bool higher = higher_is_better(primary_metric(std::get<2>(key)));
        if (flip_direction) higher = !higher;
        double best = entries.front().second;
        for (const auto& [alg, v] : entries) best = higher ? std::max(best, v) : std::min(best, v);
        for (const auto& [alg, v] : entries) {
            bool tied = (v == best) || std::fabs(v - best) <= 1e-12;
            if (tied) {
                table.overall[{std::get<1>(key), alg, std::get<0>(key)}] += 1;
                table.by_query[{alg, std::get<2>(key)}] += 1;
            }
        }
    }
    if (!missing.empty()) {
        std::string msg = "best_counts: incomplete coverage, missing cells:";
        for (const auto& m : missing) msg += "\n  - " + m;
        throw std::runtime_error(msg);
    }
    return table;
}

namespace {

std::string sanitize_warning(std::string s) {
    for (char& c : s) {
        if (c == ',' || c == '\n' || c == '\r') c = ' ';
        if (c == ';') c = ':';
    }
    return s;
}

std::string join_warnings(const std::vector<std::string>& warnings) {
    std::string out;
    for (const auto& w : warnings) {
        if (!out.empty()) out += ';';
        out += sanitize_warning(w);
    }
    return out;
}

} // namespace

void write_report(std::span<const CellResult> cells, std::span<const AggregateRow> aggregates,
                  const BestCountTable& best, const ExperimentGrid& grid, const GridRunInfo& info,
                  const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    auto path = [&](const char* name) { return (std::filesystem::path(out_dir) / name).string(); };

    {
        std::ofstream out(path("cells.csv"));
        out << "algorithm,dataset,epsilon,query,repetition,metric,value,wall_s,peak_bytes,warnings\n";
        for (const auto& cell : cells) {
            if (cell.failed) continue;
            std::string warnings = join_warnings(cell.warnings);
            for (const auto& entry : cell.metrics) {
                out << cell.algorithm << ',' << cell.dataset << ',' << format_double(cell.epsilon)
                    << ',' << query_code(entry.query) << ',' << cell.repetition << ','
                    << metric_name(entry.metric) << ',' << format_double(entry.value) << ','
                    << format_double(cell.wall_s) << ',' << cell.peak_bytes << ',' << warnings
                    << '\n';
            }
        }
    }
    {
        std::ofstream out(path("aggregate.csv"));
        out << "algorithm,dataset,epsilon,query,metric,primary,mean,sd,reps\n";
        for (const auto& row : aggregates) {
            out << row.algorithm << ',' << row.dataset << ',' << format_double(row.epsilon) << ','
                << query_code(row.query) << ',' << metric_name(row.metric) << ','
                << (row.primary ? 1 : 0) << ',' << format_double(row.mean) << ','
                << format_double(row.sd) << ',' << row.reps << '\n';
        }
    }
    {
        // one row per (epsilon, algorithm), one column per dataset
        std::ofstream out(path("best_counts_overall.csv"));
        out << "epsilon,algorithm";
        for (const auto& ds : grid.datasets) out << ',' << ds.name;
        out << '\n';
        std::set<std::pair<double, std::string>> row_keys;
        for (const auto& [key, count] : best.overall)
            row_keys.insert({std::get<0>(key), std::get<1>(key)});
        for (const auto& [eps, alg] : row_keys) {
            out << format_double(eps) << ',' << alg;
            for (const auto& ds : grid.datasets) {
                auto it = best.overall.find({eps, alg, ds.name});
                out << ',' << (it == best.overall.end() ? 0 : it->second);
            }
            out << '\n';
        }
    }
    {
        // one row per algorithm, one column per query
        std::ofstream out(path("best_counts_by_query.csv"));
        out << "algorithm";
        for (QueryId q : grid.queries) out << ',' << query_code(q);
        out << '\n';
        std::set<std::string> algs;
        for (const auto& [key, count] : best.by_query) algs.insert(key.first);
        for (const auto& alg : algs) {
            out << alg;
            for (QueryId q : grid.queries) {
                auto it = best.by_query.find({alg, q});
                out << ',' << (it == best.by_query.end() ? 0 : it->second);
            }
            out << '\n';
        }
    }
    {
        nlohmann::json manifest;
        manifest["schema_version"] = 1;
        manifest["tool"] = "pgb";
        manifest["root_seed"] = grid.root_seed;
        manifest["workers"] = grid.workers;
        manifest["repetitions"] = grid.repetitions;
        manifest["delta"] = grid.delta;
        manifest["epsilons"] = grid.epsilons;
        manifest["memory_method"] = "thread-local allocation high-water (operator new/delete)";
        manifest["plot_ready_csv"] = "cells.csv";
        for (QueryId q : grid.queries)
            manifest["queries"].push_back(query_code(q) + ":" + query_name(q));
        for (const auto& ds : grid.datasets) {
            nlohmann::json j;
            j["name"] = ds.name;
            j["source"] = ds.source;
            j["type"] = ds.type_tag;
            if (ds.expected_n) j["expected_n"] = *ds.expected_n;
            if (ds.expected_m) j["expected_m"] = *ds.expected_m;
            j["approximate"] = ds.approximate;
            manifest["datasets"].push_back(j);
        }
        for (Algorithm a : grid.algorithms) {
            nlohmann::json j;
            j["name"] = algorithm_name(a);
            const auto& cfg = grid.config_for(a);
            for (const auto& [label, fraction] : synth_detail::resolve_split(a, cfg.budget_split))
                j["budget_split"][label] = fraction;
            j["requires_delta"] = requires_delta(a);
            manifest["algorithms"].push_back(j);
        }
        for (const auto& [ds, drops] : info.dropped_queries)
            for (const auto& [q, reason] : drops)
                manifest["dropped_true_queries"].push_back(
                    {{"dataset", ds}, {"query", query_code(q)}, {"reason", reason}});
        for (const auto& [ds, reason] : info.failed_datasets)
            manifest["failed_datasets"].push_back({{"dataset", ds}, {"reason", reason}});
        for (const auto& cell : cells) {
            if (!cell.failed) continue;
            manifest["failed_cells"].push_back({{"algorithm", cell.algorithm},
                                                {"dataset", cell.dataset},
                                                {"epsilon", cell.epsilon},
                                                {"repetition", cell.repetition},
                                                {"reason", cell.failure}});
        }
        std::ofstream out(path("manifest.json"));
        out << manifest.dump(2) << '\n';
    }
}

std::vector<CellResult> read_cells_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");

    std::map<std::tuple<std::string, std::string, double, int>, CellResult> cells;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        while (fields.size() < 10) fields.emplace_back();
        if (fields.size() != 10)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad column count");
        double eps = std::strtod(fields[2].c_str(), nullptr);
        int rep = std::stoi(fields[4]);
        auto key = std::make_tuple(fields[0], fields[1], eps, rep);
        auto& cell = cells[key];
        cell.algorithm = fields[0];
        cell.dataset = fields[1];
        cell.epsilon = eps;
        cell.repetition = rep;
        cell.wall_s = std::strtod(fields[7].c_str(), nullptr);
        cell.peak_bytes = std::strtoull(fields[8].c_str(), nullptr, 10);
        QueryId q = parse_query(fields[3]);
        MetricId m = parse_metric(fields[5]);
        double value = std::strtod(fields[6].c_str(), nullptr);
        cell.metrics.push_back({q, m, value, m == primary_metric(q)});
    }
    std::vector<CellResult> out;
    out.reserve(cells.size());
    for (auto& [key, cell] : cells) out.push_back(std::move(cell));
    return out;
}

} // namespace pgb
