#ifndef QMMC_EXPERIMENTS_HPP
#define QMMC_EXPERIMENTS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qmmc/engine.hpp"
#include "qmmc/procedures.hpp"
#include "qmmc/rng.hpp"

namespace qmmc {

enum class Method { quickmmctest, naive };

std::string_view method_label(Method method);
Method parse_method(std::string_view token);

struct SimulationConfig {
    std::size_t hypothesis_count = 5000;  // m
    double pi1 = 0.1;                     // proportion of false nulls
    double alt_beta_a = 0.25;             // Beta parameters of the alternative p-values
    double alt_beta_b = 25.0;
    std::size_t replications = 1;
    std::uint64_t seed = 1;
    std::vector<std::uint64_t> efforts = {1000};  // samples per hypothesis; K = effort * m
    std::vector<Method> methods = {Method::quickmmctest, Method::naive};
    ProcedureSpec procedure{};
    ThresholdRule rule{};
    std::size_t iterations = 10;   // n_max
    std::size_t resamples = 1000;  // R
    double cutoff = 0.5;
    DecisionMode decision_mode = DecisionMode::empirical_rejection_prob;
    // When set, one p-value set is generated from fixed_set_seed and reused
    // across all replications; only the Monte Carlo noise varies.
    bool fixed_set = false;
    std::uint64_t fixed_set_seed = 1729;
    unsigned threads = 1;

    void validate() const;
};

struct GroundTruth {
    std::vector<double> p_star;
    std::vector<char> false_null;  // 1 = the null hypothesis is false
    RejectionSet truth_rejections;

    std::size_t false_null_count() const;
};

struct SwitchCounts {
    std::size_t switched = 0;             // |decisions symdiff truth_rejections|
    std::size_t switched_rejections = 0;  // |decisions \ truth_rejections|
};

struct PowerMetrics {
    double per_pair_power = 0.0;
    double fnp = 0.0;
    bool power_defined = true;  // false when no false nulls exist (power reported as 0)
};

struct MetricsRecord {
    std::size_t replication = 0;
    std::uint64_t seed = 0;  // replication seed
    Method method = Method::quickmmctest;
    ProcedureName procedure = ProcedureName::bh;
    ThresholdKind rule = ThresholdKind::constant;
    double alpha = 0.0;
    std::uint64_t effort = 0;
    std::size_t rejections = 0;
    std::size_t switched = 0;
    std::size_t switched_rejections = 0;
    double power = 0.0;
    double fnp = 0.0;
    bool power_defined = true;
    std::uint64_t spend = 0;
};

// Mixture draw: falseness ~ Bernoulli(pi1); false nulls get p* ~
// Beta(alt_beta_a, alt_beta_b), true nulls p* ~ Uniform[0,1]. Ground-truth
// rejections come from applying the configured procedure to p*.
GroundTruth generate_pvalues(const SimulationConfig& config, RngStream& rng);

// Classification differences against the ground-truth decisions.
// Throws input_error when an index falls outside the truth's range.
SwitchCounts switched_metrics(const RejectionSet& decisions, const GroundTruth& truth);

// Per-pair power (rejected false nulls / false nulls, 0 when none exist) and
// false non-discovery proportion (false nulls among the non-rejected, 0 when
// everything is rejected).
PowerMetrics power_metrics(const RejectionSet& decisions, const GroundTruth& truth);

// One record per (replication, method, effort), ordered by replication, then
// method, then effort. Replications run independently (in parallel when
// threads > 1) on seeds derived from the root seed; output is identical for
// every thread count.
std::vector<MetricsRecord> run_study(const SimulationConfig& config);

struct Aggregate {
    double mean = 0.0;
    double se = 0.0;  // standard error of the mean
    std::size_t count = 0;
};

Aggregate aggregate(const std::vector<double>& values);

}  // namespace qmmc

#endif  // QMMC_EXPERIMENTS_HPP
