#ifndef QMMC_CONFIG_HPP
#define QMMC_CONFIG_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "qmmc/engine.hpp"
#include "qmmc/experiments.hpp"

namespace qmmc {

using KeyValueList = std::vector<std::pair<std::string, std::string>>;

// Flat `key = value` file; `#` starts a comment, blank lines are ignored.
// Throws format_error (with line number) on malformed lines; missing file
// raises a format_error naming the path.
KeyValueList parse_key_value_file(const std::filesystem::path& path);

// Applies one key to a simulation configuration. Keys mirror the
// configuration fields: m, pi1, alt_beta_a, alt_beta_b, replications, seed,
// efforts, methods, procedure, threshold_rule, alpha, n_max, R, cutoff,
// decision_mode, fixed_set, fixed_set_seed, threads. Throws config_error
// naming the offending key on unknown keys or unparseable values.
void apply_simulation_key(SimulationConfig& config, const std::string& key,
                          const std::string& value);

SimulationConfig load_simulation_config(const std::filesystem::path& path);

// Effective configuration echoed into output headers, in a fixed key order.
// `threads` is deliberately absent: it never affects results, and including
// it would make otherwise identical runs produce different files.
KeyValueList echo_simulation_config(const SimulationConfig& config);

// Configuration of a single run against a recorded-statistics file.
struct RunConfig {
    Method method = Method::quickmmctest;
    ProcedureSpec procedure{};
    ThresholdRule rule{};
    std::uint64_t total_budget = 0;  // K; the naive method spends K/m per hypothesis
    std::size_t iterations = 10;     // n_max
    std::size_t resamples = 1000;    // R
    double cutoff = 0.5;
    DecisionMode decision_mode = DecisionMode::empirical_rejection_prob;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

// Keys: method, procedure, threshold_rule, alpha, K, n_max, R, cutoff,
// decision_mode, seed, threads.
void apply_run_key(RunConfig& config, const std::string& key, const std::string& value);

KeyValueList echo_run_config(const RunConfig& config);

}  // namespace qmmc

#endif  // QMMC_CONFIG_HPP
