#ifndef PGB_DATASET_HPP
#define PGB_DATASET_HPP

#include <optional>
#include <string>
#include <vector>

#include "pgb/graph.hpp"

namespace pgb {

/// The seven dataset categories of the benchmark.
bool valid_type_tag(const std::string& tag);

struct DatasetDescriptor {
    std::string name;
    std::string source;                  // file path or "builtin:<tag>"
    std::optional<long long> expected_n; // ingestion sanity check
    std::optional<long long> expected_m;
    bool approximate = false;            // check within 2% instead of exactly
    std::string type_tag = "synthetic";
};

/// Tags accepted after "builtin:". er10k/ba10k regenerate the benchmark's
/// synthetic graphs; twoclique300/ba300 are the desk-scale pair.
std::vector<std::string> builtin_tags();
bool is_builtin_source(const std::string& source);
Graph make_builtin(const std::string& tag);

/// Node labels planted in the twoclique300 builtin (two 150-cliques joined by
/// one bridge edge), for structural-preservation checks.
std::vector<int> twoclique300_partition();

/// Loads from file or builds the builtin, then runs the (n, m) sanity check.
/// Throws on check failure.
Graph load_dataset(const DatasetDescriptor& d);

} // namespace pgb

#endif
