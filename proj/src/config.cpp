#include "pgb/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace pgb {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

using Section = std::map<std::string, std::string>;

struct RawConfig {
    std::map<std::string, Section> sections; // "grid", "dataset:x", "alg:y"
    std::vector<std::string> dataset_order;
};

RawConfig parse_sections(const std::string& text, const std::string& origin,
                         std::vector<std::string>& problems) {
    RawConfig raw;
    std::string current;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                problems.push_back(origin + ":" + std::to_string(lineno) + ": unterminated section");
                continue;
            }
            current = trim(line.substr(1, line.size() - 2));
            if (current.rfind("dataset:", 0) == 0) raw.dataset_order.push_back(current.substr(8));
            raw.sections[current];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            problems.push_back(origin + ":" + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        if (current.empty()) {
            problems.push_back(origin + ":" + std::to_string(lineno) + ": key outside any section");
            continue;
        }
        raw.sections[current][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return raw;
}

template <typename T>
bool parse_number(const std::string& s, T& out) {
    std::stringstream ss(s);
    ss >> out;
    return static_cast<bool>(ss) && ss.eof();
}

} // namespace

RunConfig parse_run_config(const std::string& text, const std::string& origin) {
    std::vector<std::string> problems;
    RawConfig raw = parse_sections(text, origin, problems);
    RunConfig cfg;

    auto grid_it = raw.sections.find("grid");
    if (grid_it == raw.sections.end()) {
        problems.push_back(origin + ": missing [grid] section");
    } else {
        const Section& grid = grid_it->second;
        auto get = [&](const char* key) -> const std::string* {
            auto it = grid.find(key);
            return it == grid.end() ? nullptr : &it->second;
        };
        if (const auto* v = get("algorithms")) {
            if (trim(*v) == "all") {
                cfg.grid.algorithms.assign(all_algorithms.begin(), all_algorithms.end());
            } else {
                for (const auto& tok : split_ws(*v)) {
                    try {
                        cfg.grid.algorithms.push_back(parse_algorithm(tok));
                    } catch (const std::exception& e) {
                        problems.push_back(std::string("grid.algorithms: ") + e.what());
                    }
                }
            }
        } else {
            problems.push_back("grid.algorithms is required");
        }
        if (const auto* v = get("epsilons")) {
            cfg.grid.epsilons.clear();
            for (const auto& tok : split_ws(*v)) {
                double eps;
                if (parse_number(tok, eps)) cfg.grid.epsilons.push_back(eps);
                else problems.push_back("grid.epsilons: not a number: " + tok);
            }
        }
        if (const auto* v = get("queries")) {
            if (trim(*v) != "all") {
                cfg.grid.queries.clear();
                for (const auto& tok : split_ws(*v)) {
                    try {
                        cfg.grid.queries.push_back(parse_query(tok));
                    } catch (const std::exception& e) {
                        problems.push_back(std::string("grid.queries: ") + e.what());
                    }
                }
            }
        }
        if (const auto* v = get("repetitions")) {
            if (!parse_number(*v, cfg.grid.repetitions))
                problems.push_back("grid.repetitions: not an integer: " + *v);
        }
        if (const auto* v = get("root_seed")) {
            if (!parse_number(*v, cfg.grid.root_seed))
                problems.push_back("grid.root_seed: not an integer: " + *v);
        }
        if (const auto* v = get("workers")) {
            if (!parse_number(*v, cfg.grid.workers))
                problems.push_back("grid.workers: not an integer: " + *v);
        }
        if (const auto* v = get("delta")) {
            if (!parse_number(*v, cfg.grid.delta))
                problems.push_back("grid.delta: not a number: " + *v);
        }
        if (const auto* v = get("output_dir")) cfg.output_dir = *v;

        if (const auto* v = get("datasets")) {
            for (const auto& name : split_ws(*v)) {
                auto it = raw.sections.find("dataset:" + name);
                if (it == raw.sections.end()) {
                    problems.push_back("dataset " + name + ": missing [dataset:" + name + "] section");
                    continue;
                }
                DatasetDescriptor d;
                d.name = name;
                const Section& sec = it->second;
                if (auto s = sec.find("source"); s != sec.end()) d.source = s->second;
                else problems.push_back("dataset " + name + ": source is required");
                if (auto s = sec.find("type"); s != sec.end()) d.type_tag = s->second;
                if (auto s = sec.find("expected_n"); s != sec.end()) {
                    long long n;
                    if (parse_number(s->second, n)) d.expected_n = n;
                    else problems.push_back("dataset " + name + ": expected_n not an integer");
                }
                if (auto s = sec.find("expected_m"); s != sec.end()) {
                    long long m;
                    if (parse_number(s->second, m)) d.expected_m = m;
                    else problems.push_back("dataset " + name + ": expected_m not an integer");
                }
                if (auto s = sec.find("approx"); s != sec.end())
                    d.approximate = s->second == "true" || s->second == "1";
                if (!valid_type_tag(d.type_tag))
                    problems.push_back("dataset " + name + ": unknown type tag " + d.type_tag);
                cfg.grid.datasets.push_back(std::move(d));
            }
        } else {
            problems.push_back("grid.datasets is required");
        }
    }

    for (const auto& [section, content] : raw.sections) {
        if (section.rfind("alg:", 0) != 0) continue;
        Algorithm alg;
        try {
            alg = parse_algorithm(section.substr(4));
        } catch (const std::exception& e) {
            problems.push_back(std::string("config section ") + section + ": " + e.what());
            continue;
        }
        AlgorithmConfig ac;
        for (const auto& [key, value] : content) {
            if (key == "budget_split") {
                for (const auto& tok : split_ws(value)) {
                    double f;
                    if (parse_number(tok, f)) ac.budget_split.push_back(f);
                    else problems.push_back(section + ".budget_split: not a number: " + tok);
                }
            } else if (key == "constructor") {
                if (value == "dk2") ac.dpdk_constructor = DpdkConstructor::Dk2;
                else if (value == "dk1_hh") ac.dpdk_constructor = DpdkConstructor::Dk1HavelHakimi;
                else problems.push_back(section + ".constructor: expected dk2 or dk1_hh");
            } else if (key == "noise") {
                if (value == "smooth") ac.dpdk_noise = DpdkNoise::Smooth;
                else if (value == "global") ac.dpdk_noise = DpdkNoise::GlobalLaplace;
                else problems.push_back(section + ".noise: expected smooth or global");
            } else if (key == "mcmc_max_steps") {
                if (!parse_number(value, ac.mcmc_max_steps))
                    problems.push_back(section + ".mcmc_max_steps: not an integer");
            } else if (key == "block_size") {
                if (!parse_number(value, ac.privgraph_block_size))
                    problems.push_back(section + ".block_size: not an integer");
            } else if (key == "single_community") {
                ac.privgraph_single_community = value == "true" || value == "1";
            } else if (key == "target_acc") {
                if (!parse_number(value, ac.bter_target_acc))
                    problems.push_back(section + ".target_acc: not a number");
            } else {
                problems.push_back(section + ": unknown key " + key);
            }
        }
        cfg.grid.alg_configs[alg] = std::move(ac);
    }

    if (!problems.empty()) {
        std::string all = "run config invalid:";
        for (const auto& p : problems) all += "\n  - " + p;
        throw ConfigError(all);
    }
    try {
        cfg.grid.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_run_config(buffer.str(), path);
}

} // namespace pgb
