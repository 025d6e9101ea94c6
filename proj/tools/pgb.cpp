#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pgb/config.hpp"
#include "pgb/dataset.hpp"
#include "pgb/harness.hpp"
#include "pgb/queries.hpp"
#include "pgb/synthesizers.hpp"

namespace {

using namespace pgb;

std::string algorithm_help() {
    std::string s = "algorithms: ";
    for (std::size_t i = 0; i < all_algorithms.size(); ++i) {
        if (i) s += ", ";
        s += algorithm_name(all_algorithms[i]);
    }
    return s;
}

std::string query_help() {
    std::string s = "queries: ";
    for (std::size_t i = 0; i < all_queries.size(); ++i) {
        if (i) s += ", ";
        s += query_code(all_queries[i]) + " (" + query_name(all_queries[i]) + ")";
    }
    return s;
}

std::string default_out_dir() {
    const char* env = std::getenv("PGB_OUT_DIR");
    return env && *env ? env : ".";
}

Graph load_input(const std::string& input, std::vector<long long>* original_ids) {
    if (is_builtin_source(input)) {
        Graph g = make_builtin(input.substr(8));
        if (original_ids) {
            original_ids->resize(static_cast<std::size_t>(g.node_count()));
            for (int u = 0; u < g.node_count(); ++u) (*original_ids)[static_cast<std::size_t>(u)] = u;
        }
        return g;
    }
    LoadedGraph loaded = load_edge_list(input);
    if (original_ids) *original_ids = loaded.original_ids;
    return loaded.graph;
}

struct GenerateArgs {
    std::string alg;
    std::string input;
    std::string out;
    double epsilon = 0.0;
    double delta = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> budget_split;
    std::string constructor = "dk2";
    std::string noise = "smooth";
    long long mcmc_max_steps = -1;
    int block_size = 2;
    bool single_community = false;
    double target_acc = 0.3;
};

int run_generate(const GenerateArgs& args) {
    Algorithm alg = parse_algorithm(args.alg);
    if (requires_delta(alg) && args.delta <= 0.0) {
        std::cerr << "error: " << algorithm_name(alg) << " requires --delta > 0\n";
        return 2;
    }
    AlgorithmConfig cfg;
    cfg.budget_split = args.budget_split;
    cfg.dpdk_constructor =
        args.constructor == "dk1_hh" ? DpdkConstructor::Dk1HavelHakimi : DpdkConstructor::Dk2;
    cfg.dpdk_noise = args.noise == "global" ? DpdkNoise::GlobalLaplace : DpdkNoise::Smooth;
    cfg.mcmc_max_steps = args.mcmc_max_steps;
    cfg.privgraph_block_size = args.block_size;
    cfg.privgraph_single_community = args.single_community;
    cfg.bter_target_acc = args.target_acc;

    std::vector<long long> original_ids;
    Graph g = load_input(args.input, &original_ids);
    PrivacyBudget budget{args.epsilon, requires_delta(alg) ? args.delta : 0.0};
    SynthesisRecord record = generate(alg, g, budget, args.seed, cfg);

    std::string out = args.out;
    if (out.empty()) {
        std::string stem = std::filesystem::path(args.input).stem().string();
        if (stem.empty()) stem = "graph";
        out = (std::filesystem::path(default_out_dir()) /
               (stem + "." + algorithm_name(alg) + ".syn.txt"))
                  .string();
    }
    if (auto dir = std::filesystem::path(out).parent_path(); !dir.empty())
        std::filesystem::create_directories(dir);
    write_edge_list(record.output, out);

    // ingestion relabel map, for traceability back to the source labels
    {
        std::ofstream map_out(out + ".mapping");
        map_out << "# new_id original_id\n";
        for (std::size_t i = 0; i < original_ids.size(); ++i)
            map_out << i << ' ' << original_ids[i] << '\n';
    }

    nlohmann::json sidecar;
    sidecar["algorithm"] = algorithm_name(alg);
    sidecar["input"] = args.input;
    sidecar["seed"] = args.seed;
    sidecar["epsilon"] = budget.epsilon;
    sidecar["delta"] = budget.delta;
    for (const auto& stage : record.ledger.stages)
        sidecar["ledger"].push_back(
            {{"stage", stage.label}, {"epsilon", stage.epsilon}, {"delta", stage.delta}});
    for (const auto& timing : record.stage_timings)
        sidecar["stage_seconds"][timing.label] = timing.seconds;
    for (const auto& [key, value] : record.summaries) sidecar["summaries"][key] = value;
    if (record.repaired_degrees) sidecar["repaired_degrees"] = *record.repaired_degrees;
    sidecar["warnings"] = record.warnings;
    sidecar["output"] = {{"nodes", record.output.node_count()},
                         {"edges", record.output.edge_count()}};
    std::ofstream ledger_out(out + ".ledger.json");
    ledger_out << sidecar.dump(2) << '\n';

    std::cout << out << '\n';
    return 0;
}

int run_query_cmd(const std::string& input, const std::string& query, std::uint64_t seed,
                  const std::string& out_path) {
    Graph g = load_input(input, nullptr);
    QueryId q = parse_query(query);
    QueryValue value = run_query(q, g, seed);

    std::ostringstream body;
    switch (value.kind) {
        case QueryValue::Kind::Scalar:
            body << format_double(value.scalar) << '\n';
            break;
        case QueryValue::Kind::Distribution:
            body << "index,probability\n";
            for (std::size_t i = 0; i < value.values.size(); ++i)
                body << i << ',' << format_double(value.values[i]) << '\n';
            break;
        case QueryValue::Kind::Partition:
            body << "node,community\n";
            for (std::size_t i = 0; i < value.labels.size(); ++i)
                body << i << ',' << value.labels[i] << '\n';
            break;
        case QueryValue::Kind::NodeScores:
            body << "node,score\n";
            for (std::size_t i = 0; i < value.values.size(); ++i)
                body << i << ',' << format_double(value.values[i]) << '\n';
            break;
    }
    if (!value.note.empty()) std::cerr << "note: " << value.note << '\n';
    if (out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(out_path);
        out << body.str();
        std::cout << out_path << '\n';
    }
    return 0;
}

int run_bench(const std::string& config_path, bool dry_run, std::optional<std::uint64_t> seed,
              std::optional<int> workers, std::string out_override) {
    RunConfig cfg = load_run_config(config_path);
    if (seed) cfg.grid.root_seed = *seed;
    if (workers) cfg.grid.workers = *workers;
    if (!out_override.empty()) cfg.output_dir = out_override;

    std::size_t synth_runs = cfg.grid.algorithms.size() * cfg.grid.datasets.size() *
                             cfg.grid.epsilons.size() * static_cast<std::size_t>(cfg.grid.repetitions);
    if (dry_run) {
        std::cout << "planned synthesis runs: " << synth_runs << '\n'
                  << "planned metric rows:    " << synth_runs * cfg.grid.queries.size() << '\n';
        return 0;
    }

    GridRunInfo info;
    std::vector<CellResult> cells = run_grid(cfg.grid, &info);
    std::vector<AggregateRow> aggregates = aggregate_means(cells);
    BestCountTable best = best_counts(aggregates);
    write_report(cells, aggregates, best, cfg.grid, info, cfg.output_dir);

    std::cout << "report written to " << cfg.output_dir << "\n\nbest counts (queries won, per dataset):\n";
    std::cout << "epsilon,algorithm";
    for (const auto& ds : cfg.grid.datasets) std::cout << ',' << ds.name;
    std::cout << '\n';
    std::set<std::pair<double, std::string>> rows;
    for (const auto& [key, count] : best.overall)
        rows.insert({std::get<0>(key), std::get<1>(key)});
    for (const auto& [eps, alg] : rows) {
        std::cout << format_double(eps) << ',' << alg;
        for (const auto& ds : cfg.grid.datasets) {
            auto it = best.overall.find({eps, alg, ds.name});
            std::cout << ',' << (it == best.overall.end() ? 0 : it->second);
        }
        std::cout << '\n';
    }
    return 0;
}

int run_report(const std::string& cells_path, const std::string& out_dir) {
    std::vector<CellResult> cells = read_cells_csv(cells_path);
    std::vector<AggregateRow> aggregates = aggregate_means(cells);
    BestCountTable best = best_counts(aggregates);

    // reconstruct enough grid structure for the writers
    ExperimentGrid grid;
    std::set<std::string> algs, datasets;
    std::set<int> query_ids;
    for (const auto& cell : cells) {
        algs.insert(cell.algorithm);
        datasets.insert(cell.dataset);
        for (const auto& e : cell.metrics) query_ids.insert(static_cast<int>(e.query));
    }
    for (const auto& a : algs) grid.algorithms.push_back(parse_algorithm(a));
    for (const auto& d : datasets) {
        DatasetDescriptor desc;
        desc.name = d;
        desc.source = "(from cells.csv)";
        grid.datasets.push_back(desc);
    }
    grid.queries.clear();
    for (int q : query_ids) grid.queries.push_back(static_cast<QueryId>(q));

    write_report(cells, aggregates, best, grid, GridRunInfo{}, out_dir);
    std::cout << "report written to " << out_dir << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pgb: differentially private synthetic graph generation and benchmarking\n" +
                 algorithm_help() + "\n" + query_help()};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* cmd_generate = app.add_subcommand("generate", "synthesize a private graph");
    cmd_generate->add_option("--alg", gen.alg, algorithm_help())->required();
    cmd_generate->add_option("--input", gen.input, "edge list path or builtin:<tag>")->required();
    cmd_generate->add_option("--epsilon", gen.epsilon, "privacy budget")->required();
    cmd_generate->add_option("--delta", gen.delta, "delta (required for DP-dK and PrivSKG)");
    cmd_generate->add_option("--seed", gen.seed, "RNG seed")->required();
    cmd_generate->add_option("--out", gen.out, "output edge list path");
    cmd_generate->add_option("--budget-split", gen.budget_split, "stage fractions override");
    cmd_generate->add_option("--constructor", gen.constructor, "DP-dK constructor: dk2 | dk1_hh");
    cmd_generate->add_option("--noise", gen.noise, "DP-dK noise: smooth | global");
    cmd_generate->add_option("--mcmc-max-steps", gen.mcmc_max_steps, "PrivHRG MCMC step cap");
    cmd_generate->add_option("--block-size", gen.block_size, "PrivGraph coarse block size");
    cmd_generate->add_flag("--single-community", gen.single_community,
                           "PrivGraph: skip partitioning");
    cmd_generate->add_option("--target-acc", gen.target_acc, "DGG BTER clustering target");

    std::string q_input, q_query, q_out;
    std::uint64_t q_seed = 0;
    auto* cmd_query = app.add_subcommand("query", "evaluate a graph query");
    cmd_query->add_option("--input", q_input, "edge list path or builtin:<tag>")->required();
    cmd_query->add_option("--query", q_query, query_help())->required();
    cmd_query->add_option("--seed", q_seed, "seed (community detection)");
    cmd_query->add_option("--out", q_out, "write CSV here instead of stdout");

    std::string b_config, b_out;
    bool b_dry = false;
    std::optional<std::uint64_t> b_seed;
    std::optional<int> b_workers;
    auto* cmd_bench = app.add_subcommand("bench", "run an experiment grid from a config file");
    cmd_bench->add_option("--config", b_config, "run config path")->required();
    cmd_bench->add_flag("--dry-run", b_dry, "print the planned cell count and exit");
    cmd_bench->add_option("--seed", b_seed, "override root seed");
    cmd_bench->add_option("--workers", b_workers, "override worker count");
    cmd_bench->add_option("--output", b_out, "override output directory");

    std::string r_cells, r_out;
    auto* cmd_report = app.add_subcommand("report", "re-aggregate an existing raw cells.csv");
    cmd_report->add_option("--cells", r_cells, "cells.csv path")->required();
    cmd_report->add_option("--out", r_out, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*cmd_generate) return run_generate(gen);
        if (*cmd_query) return run_query_cmd(q_input, q_query, q_seed, q_out);
        if (*cmd_bench) return run_bench(b_config, b_dry, b_seed, b_workers, b_out);
        if (*cmd_report) return run_report(r_cells, r_out);
    } catch (const pgb::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
