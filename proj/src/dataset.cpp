#include "pgb/dataset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace pgb {

namespace {

constexpr std::uint64_t kBuiltinSeedEr10k = 0x45521030ULL;
constexpr std::uint64_t kBuiltinSeedBa10k = 0xBA103000ULL;
constexpr std::uint64_t kBuiltinSeedBa300 = 0xBA300000ULL;

Graph make_twoclique300() {
    // two 150-cliques joined by a single bridge: high ACC, a planted
    // two-block community structure
    std::vector<Edge> edges;
    for (int block = 0; block < 2; ++block) {
        int base = block * 150;
        for (int i = 0; i < 150; ++i)
            for (int j = i + 1; j < 150; ++j) edges.emplace_back(base + i, base + j);
    }
    edges.emplace_back(0, 150);
    return Graph(300, std::move(edges));
}

} // namespace

bool valid_type_tag(const std::string& tag) {
    static const std::array<const char*, 7> tags = {"social",    "web",        "academic", "traffic",
                                                    "financial", "technology", "synthetic"};
    return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

std::vector<std::string> builtin_tags() { return {"er10k", "ba10k", "twoclique300", "ba300"}; }

bool is_builtin_source(const std::string& source) { return source.rfind("builtin:", 0) == 0; }

Graph make_builtin(const std::string& tag) {
    if (tag == "er10k") return generate_er(10000, 250278, kBuiltinSeedEr10k);
    if (tag == "ba10k") return generate_ba(10000, 5, kBuiltinSeedBa10k);
    if (tag == "twoclique300") return make_twoclique300();
    if (tag == "ba300") return generate_ba(300, 5, kBuiltinSeedBa300);
    throw std::invalid_argument("unknown builtin dataset tag: " + tag);
}

std::vector<int> twoclique300_partition() {
    std::vector<int> labels(300, 0);
    std::fill(labels.begin() + 150, labels.end(), 1);
    return labels;
}

Graph load_dataset(const DatasetDescriptor& d) {
    if (!valid_type_tag(d.type_tag))
        throw std::invalid_argument("dataset " + d.name + ": unknown type tag " + d.type_tag);
    Graph g;
    if (is_builtin_source(d.source)) {
        g = make_builtin(d.source.substr(std::string("builtin:").size()));
    } else {
        g = load_edge_list(d.source).graph;
    }

    auto check = [&](const char* what, long long expected, long long actual) {
        bool ok = d.approximate
                      ? std::fabs(static_cast<double>(actual - expected)) <=
                            0.02 * static_cast<double>(expected)
                      : actual == expected;
        if (!ok)
            throw std::runtime_error("dataset " + d.name + ": expected " + what + " " +
                                     std::to_string(expected) + ", got " + std::to_string(actual));
    };
    if (d.expected_n) check("node count", *d.expected_n, g.node_count());
    if (d.expected_m) check("edge count", *d.expected_m, static_cast<long long>(g.edge_count()));
    return g;
}

} // namespace pgb
