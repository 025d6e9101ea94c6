#ifndef PGB_CONFIG_HPP
#define PGB_CONFIG_HPP

#include <stdexcept>
#include <string>

#include "pgb/harness.hpp"

namespace pgb {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    ExperimentGrid grid;
    std::string output_dir = "pgb-out";
};

/// Sectioned key-value run config:
///
///   [grid]
///   algorithms  = DGG TmF ...      (or "all")
///   datasets    = name1 name2      (each needs a [dataset:<name>] section)
///   epsilons    = 0.1 1 10
///   queries     = all              (or Q1 Q11 acc ...)
///   repetitions = 3
///   root_seed   = 42
///   workers     = 4
///   delta       = 0.01
///   output_dir  = out
///
///   [dataset:name1]
///   source = builtin:twoclique300  (or a file path)
///   type   = synthetic
///   expected_n = 300               (optional sanity check)
///   expected_m = 22351
///   approx = false
///
///   [alg:TmF]
///   budget_split = 0.1 0.9
///
/// '#' and ';' start comments. Validation reports every problem at once.
RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(const std::string& text, const std::string& origin);

} // namespace pgb

#endif
