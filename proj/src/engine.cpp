#include "qmmc/engine.hpp"

#include <algorithm>
#include <cmath>

#include "qmmc/errors.hpp"
#include "qmmc/parallel.hpp"

namespace qmmc {

std::string_view decision_mode_label(DecisionMode mode) {
    return mode == DecisionMode::empirical_rejection_prob ? "empirical_rejection_prob"
                                                          : "point_estimate";
}

DecisionMode parse_decision_mode(std::string_view token) {
    if (token == "empirical_rejection_prob") return DecisionMode::empirical_rejection_prob;
    if (token == "point_estimate") return DecisionMode::point_estimate;
    throw config_error("unknown decision mode '" + std::string(token) +
                       "' (expected empirical_rejection_prob or point_estimate)");
}

void EngineConfig::validate() const {
    if (iterations == 0) throw config_error("iterations must be >= 1");
    if (batch_size() == 0) {
        throw config_error("budget " + std::to_string(total_budget) + " spread over " +
                           std::to_string(iterations) +
                           " iterations leaves no samples per iteration");
    }
    if (resamples == 0) throw config_error("resamples must be >= 1");
    if (!(cutoff > 0.0 && cutoff < 1.0)) throw config_error("cutoff must lie in (0,1)");
}

std::uint64_t DecisionReport::total_samples() const {
    std::uint64_t total = 0;
    for (const auto& h : hypotheses) total += h.samples;
    return total;
}

RejectionSet DecisionReport::rejected_indices() const {
    RejectionSet set;
    for (std::size_t i = 0; i < hypotheses.size(); ++i) {
        if (hypotheses[i].rejected) set.push_back(i);
    }
    return set;
}

std::vector<std::uint32_t> resample_rejection_counts(std::span<const HypothesisState> states,
                                                     const ProcedureSpec& proc,
                                                     const ThresholdRule& rule,
                                                     std::size_t resamples,
                                                     std::uint64_t pass_seed, unsigned threads) {
    const std::size_t m = states.size();
    const unsigned workers = effective_threads(threads);
    std::vector<std::vector<std::uint32_t>> partial(workers);

    parallel_ranges(resamples, workers, [&](std::size_t first, std::size_t last, unsigned w) {
        std::vector<std::uint32_t> counts(m, 0);
        std::vector<double> p(m);
        std::vector<char> rejected(m);
        ProcedureEvaluator eval(proc, m);
        for (std::size_t rep = first; rep < last; ++rep) {
            RngStream rng(derive_stream(pass_seed, rep));
            for (std::size_t i = 0; i < m; ++i) {
                p[i] = sample_posterior(states[i], rng);
            }
            const double alpha = effective_alpha(rule, p);
            eval.evaluate(p, alpha, rejected);
            for (std::size_t i = 0; i < m; ++i) counts[i] += rejected[i];
        }
        partial[w] = std::move(counts);
    });

    std::vector<std::uint32_t> counts(m, 0);
    for (const auto& block : partial) {
        if (block.empty()) continue;
        for (std::size_t i = 0; i < m; ++i) counts[i] += block[i];
    }
    return counts;
}

WeightResult compute_weights(std::span<const HypothesisState> states, const ProcedureSpec& proc,
                             const ThresholdRule& rule, std::size_t resamples,
                             std::uint64_t pass_seed, unsigned threads) {
    const std::size_t m = states.size();
    if (m == 0) throw input_error("compute_weights requires at least one hypothesis");
    if (resamples == 0) throw input_error("compute_weights requires resamples >= 1");

    WeightResult result;
    result.rejection_counts =
        resample_rejection_counts(states, proc, rule, resamples, pass_seed, threads);
    result.weights.resize(m);

    const double r_total = static_cast<double>(resamples);
    bool any_positive = false;
    for (std::size_t i = 0; i < m; ++i) {
        const double freq = static_cast<double>(result.rejection_counts[i]) / r_total;
        result.weights[i] = std::min(freq, 1.0 - freq);
        any_positive = any_positive || result.weights[i] > 0.0;
    }
    if (!any_positive) {
        std::fill(result.weights.begin(), result.weights.end(), 1.0 / static_cast<double>(m));
        result.fallback_applied = true;
    }
    return result;
}

std::vector<std::uint64_t> residual_allocate(std::span<const double> weights, std::uint64_t delta,
                                             RngStream& rng) {
    const std::size_t m = weights.size();
    if (delta == 0) throw std::logic_error("residual_allocate requires delta >= 1");
    double total_weight = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw std::logic_error("residual_allocate requires nonnegative weights");
        total_weight += w;
    }
    if (!(total_weight > 0.0)) {
        throw std::logic_error("residual_allocate requires a positive weight sum");
    }

    std::vector<std::uint64_t> allocation(m);
    std::vector<double> frac_cumulative(m);
    const double scale = static_cast<double>(delta) / total_weight;
    std::uint64_t assigned = 0;
    double running = 0.0;
    std::size_t last_positive = m;  // last index with a positive fractional part
    for (std::size_t i = 0; i < m; ++i) {
        const double share = weights[i] * scale;
        const double floored = std::floor(share);
        allocation[i] = static_cast<std::uint64_t>(floored);
        assigned += allocation[i];
        const double frac = share - floored;
        if (frac > 0.0) last_positive = i;
        running += frac;
        frac_cumulative[i] = running;
    }

    std::uint64_t remainder = delta - assigned;
    if (remainder > 0 && !(running > 0.0)) {
        // Fractional mass lost to rounding; spread the few leftovers evenly.
        for (std::uint64_t j = 0; j < remainder; ++j) allocation[j % m] += 1;
        return allocation;
    }
    for (std::uint64_t j = 0; j < remainder; ++j) {
        const double u = rng.uniform01() * running;
        auto it = std::upper_bound(frac_cumulative.begin(), frac_cumulative.end(), u);
        std::size_t idx = static_cast<std::size_t>(it - frac_cumulative.begin());
        if (idx >= m) idx = last_positive;
        allocation[idx] += 1;
    }
    return allocation;
}

ResampleDecisions final_decisions(std::span<const HypothesisState> states,
                                  const ProcedureSpec& proc, const ThresholdRule& rule,
                                  std::size_t resamples, double cutoff, std::uint64_t pass_seed,
                                  unsigned threads) {
    if (resamples == 0) throw input_error("final_decisions requires resamples >= 1");
    ResampleDecisions out;
    out.rejection_counts =
        resample_rejection_counts(states, proc, rule, resamples, pass_seed, threads);
    out.rejected.resize(states.size());
    const double r_total = static_cast<double>(resamples);
    for (std::size_t i = 0; i < states.size(); ++i) {
        out.rejected[i] = static_cast<double>(out.rejection_counts[i]) / r_total > cutoff;
    }
    return out;
}

std::vector<char> final_decisions_point(std::span<const HypothesisState> states,
                                        const ProcedureSpec& proc, const ThresholdRule& rule) {
    std::vector<double> estimates(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        estimates[i] = point_estimate(states[i]);
    }
    const double alpha = effective_alpha(rule, estimates);
    const RejectionSet set = apply_procedure(proc, estimates, alpha);
    std::vector<char> rejected(states.size(), 0);
    for (std::size_t idx : set) rejected[idx] = 1;
    return rejected;
}

DecisionReport run_quickmmctest(const EngineConfig& config, ExceedanceSource& source,
                                const ProcedureSpec& proc, const ThresholdRule& rule,
                                std::uint64_t seed, unsigned threads) {
    config.validate();
    const std::size_t m = source.hypothesis_count();
    if (m == 0) throw config_error("source serves no hypotheses");

    const std::uint64_t delta = config.batch_size();
    std::vector<HypothesisState> states(m);
    std::vector<double> weights(m, 1.0 / static_cast<double>(m));

    for (std::size_t n = 1; n <= config.iterations; ++n) {
        if (n > 1) {
            weights = compute_weights(states, proc, rule, config.resamples,
                                      derive_stream(seed, stream_tag::weights, n), threads)
                          .weights;
        }
        RngStream alloc_rng(derive_stream(seed, stream_tag::allocation, n));
        const std::vector<std::uint64_t> allocation = residual_allocate(weights, delta, alloc_rng);

        std::uint64_t allocated = 0;
        for (std::uint64_t a : allocation) allocated += a;
        if (allocated != delta) {
            throw std::logic_error("allocation does not sum to the iteration batch");
        }

        RngStream source_rng(derive_stream(seed, stream_tag::source, n));
        for (std::size_t i = 0; i < m; ++i) {
            if (allocation[i] == 0) continue;
            std::uint64_t exceedances = 0;
            try {
                exceedances = source.draw_batch(i, allocation[i], source_rng);
            } catch (const source_exhausted& e) {
                throw partial_run_error(e, std::move(states));
            }
            states[i] = update_state(states[i], exceedances, allocation[i]);
        }
    }

    DecisionReport report;
    report.mode = config.decision_mode;
    report.cutoff = config.cutoff;
    report.hypotheses.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        report.hypotheses[i].samples = states[i].samples;
        report.hypotheses[i].exceedances = states[i].exceedances;
    }

    if (config.decision_mode == DecisionMode::empirical_rejection_prob) {
        report.resamples = config.resamples;
        const ResampleDecisions fd =
            final_decisions(states, proc, rule, config.resamples, config.cutoff,
                            derive_stream(seed, stream_tag::final_decisions), threads);
        for (std::size_t i = 0; i < m; ++i) {
            report.hypotheses[i].rejection_count = fd.rejection_counts[i];
            report.hypotheses[i].rejection_probability =
                static_cast<double>(fd.rejection_counts[i]) /
                static_cast<double>(config.resamples);
            report.hypotheses[i].rejected = fd.rejected[i];
        }
    } else {
        const std::vector<char> rejected = final_decisions_point(states, proc, rule);
        for (std::size_t i = 0; i < m; ++i) {
            report.hypotheses[i].rejected = rejected[i];
        }
    }
    return report;
}

}  // namespace qmmc
