#include "qmmc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "qmmc/baselines.hpp"
#include "qmmc/errors.hpp"
#include "qmmc/parallel.hpp"

namespace qmmc {

std::string_view method_label(Method method) {
    return method == Method::quickmmctest ? "quickmmctest" : "naive";
}

Method parse_method(std::string_view token) {
    if (token == "quickmmctest") return Method::quickmmctest;
    if (token == "naive") return Method::naive;
    throw config_error("unknown method '" + std::string(token) +
                       "' (expected quickmmctest or naive)");
}

void SimulationConfig::validate() const {
    if (hypothesis_count == 0) throw config_error("m must be >= 1");
    if (!(pi1 >= 0.0 && pi1 <= 1.0)) throw config_error("pi1 must lie in [0,1]");
    if (!(alt_beta_a > 0.0) || !(alt_beta_b > 0.0)) {
        throw config_error("alt_beta_a and alt_beta_b must be positive");
    }
    if (replications == 0) throw config_error("replications must be >= 1");
    if (efforts.empty()) throw config_error("efforts must list at least one entry");
    if (methods.empty()) throw config_error("methods must list at least one entry");
    for (std::uint64_t effort : efforts) {
        if (effort == 0) throw config_error("efforts must be >= 1 sample per hypothesis");
    }
    if (!(rule.alpha_star >= 0.0 && rule.alpha_star <= 1.0)) {
        throw config_error("alpha must lie in [0,1]");
    }
    // Engine parameters are exercised only by the quickmmctest method.
    if (std::find(methods.begin(), methods.end(), Method::quickmmctest) != methods.end()) {
        for (std::uint64_t effort : efforts) {
            EngineConfig engine{effort * hypothesis_count, iterations, resamples, cutoff,
                                decision_mode};
            engine.validate();
        }
    }
}

std::size_t GroundTruth::false_null_count() const {
    std::size_t count = 0;
    for (char f : false_null) count += f;
    return count;
}

GroundTruth generate_pvalues(const SimulationConfig& config, RngStream& rng) {
    GroundTruth truth;
    truth.p_star.resize(config.hypothesis_count);
    truth.false_null.resize(config.hypothesis_count);
    for (std::size_t i = 0; i < config.hypothesis_count; ++i) {
        truth.false_null[i] = rng.bernoulli(config.pi1) != 0;
        truth.p_star[i] = truth.false_null[i]
                              ? rng.beta(config.alt_beta_a, config.alt_beta_b)
                              : rng.uniform01();
    }
    truth.truth_rejections = apply_procedure(config.procedure, truth.p_star,
                                             effective_alpha(config.rule, truth.p_star));
    return truth;
}

namespace {

std::vector<char> decisions_mask(const RejectionSet& decisions, std::size_t m) {
    std::vector<char> mask(m, 0);
    for (std::size_t idx : decisions) {
        if (idx >= m) throw input_error("decision index exceeds the hypothesis count");
        mask[idx] = 1;
    }
    return mask;
}

}  // namespace

SwitchCounts switched_metrics(const RejectionSet& decisions, const GroundTruth& truth) {
    const std::size_t m = truth.p_star.size();
    const std::vector<char> decided = decisions_mask(decisions, m);
    std::vector<char> truth_mask(m, 0);
    for (std::size_t idx : truth.truth_rejections) truth_mask[idx] = 1;

    SwitchCounts counts;
    for (std::size_t i = 0; i < m; ++i) {
        if (decided[i] != truth_mask[i]) {
            ++counts.switched;
            if (decided[i]) ++counts.switched_rejections;
        }
    }
    return counts;
}

PowerMetrics power_metrics(const RejectionSet& decisions, const GroundTruth& truth) {
    const std::size_t m = truth.p_star.size();
    const std::vector<char> decided = decisions_mask(decisions, m);

    std::size_t false_nulls = 0;
    std::size_t rejected_false = 0;
    std::size_t accepted = 0;
    std::size_t accepted_false = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const bool is_false = truth.false_null[i] != 0;
        false_nulls += is_false;
        if (decided[i]) {
            rejected_false += is_false;
        } else {
            ++accepted;
            accepted_false += is_false;
        }
    }

    PowerMetrics metrics;
    if (false_nulls == 0) {
        metrics.per_pair_power = 0.0;
        metrics.power_defined = false;
    } else {
        metrics.per_pair_power =
            static_cast<double>(rejected_false) / static_cast<double>(false_nulls);
    }
    metrics.fnp =
        accepted == 0 ? 0.0 : static_cast<double>(accepted_false) / static_cast<double>(accepted);
    return metrics;
}

std::vector<MetricsRecord> run_study(const SimulationConfig& config) {
    config.validate();

    std::optional<GroundTruth> fixed_truth;
    if (config.fixed_set) {
        RngStream rng(derive_stream(config.fixed_set_seed, stream_tag::ground_truth));
        fixed_truth = generate_pvalues(config, rng);
    }

    const std::size_t runs_per_replication = config.methods.size() * config.efforts.size();
    std::vector<MetricsRecord> records(config.replications * runs_per_replication);

    const unsigned workers = effective_threads(config.threads);
    const unsigned engine_threads = config.replications == 1 ? workers : 1;

    parallel_ranges(config.replications, workers, [&](std::size_t first, std::size_t last,
                                                      unsigned) {
        for (std::size_t rep = first; rep < last; ++rep) {
            const std::uint64_t rep_seed =
                derive_stream(config.seed, stream_tag::replication, rep);

            GroundTruth local_truth;
            const GroundTruth* truth = nullptr;
            if (fixed_truth) {
                truth = &*fixed_truth;
            } else {
                RngStream rng(derive_stream(rep_seed, stream_tag::ground_truth));
                local_truth = generate_pvalues(config, rng);
                truth = &local_truth;
            }
            BernoulliOracle oracle(truth->p_star);

            std::size_t slot = rep * runs_per_replication;
            for (Method method : config.methods) {
                for (std::uint64_t effort : config.efforts) {
                    const std::uint64_t run_seed =
                        derive_stream(rep_seed, stream_tag::method_run,
                                      static_cast<std::uint64_t>(method), effort);

                    DecisionReport report;
                    if (method == Method::naive) {
                        report = run_naive(effort, oracle, config.procedure, config.rule,
                                           run_seed);
                    } else {
                        EngineConfig engine{effort * config.hypothesis_count, config.iterations,
                                            config.resamples, config.cutoff,
                                            config.decision_mode};
                        report = run_quickmmctest(engine, oracle, config.procedure, config.rule,
                                                  run_seed, engine_threads);
                    }
                    const RejectionSet decisions = report.rejected_indices();
                    const SwitchCounts switches = switched_metrics(decisions, *truth);
                    const PowerMetrics power = power_metrics(decisions, *truth);

                    MetricsRecord& record = records[slot++];
                    record.replication = rep;
                    record.seed = rep_seed;
                    record.method = method;
                    record.procedure = config.procedure.name;
                    record.rule = config.rule.kind;
                    record.alpha = config.rule.alpha_star;
                    record.effort = effort;
                    record.rejections = decisions.size();
                    record.switched = switches.switched;
                    record.switched_rejections = switches.switched_rejections;
                    record.power = power.per_pair_power;
                    record.fnp = power.fnp;
                    record.power_defined = power.power_defined;
                    record.spend = report.total_samples();
                }
            }
        }
    });

    return records;
}

Aggregate aggregate(const std::vector<double>& values) {
    Aggregate agg;
    agg.count = values.size();
    if (values.empty()) return agg;
    double sum = 0.0;
    for (double v : values) sum += v;
    agg.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - agg.mean) * (v - agg.mean);
        const double variance = ss / static_cast<double>(values.size() - 1);
        agg.se = std::sqrt(variance / static_cast<double>(values.size()));
    }
    return agg;
}

}  // namespace qmmc
