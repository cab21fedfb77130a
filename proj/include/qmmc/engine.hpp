#ifndef QMMC_ENGINE_HPP
#define QMMC_ENGINE_HPP

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmmc/model.hpp"
#include "qmmc/procedures.hpp"
#include "qmmc/rng.hpp"
#include "qmmc/samplers.hpp"

namespace qmmc {

enum class DecisionMode { empirical_rejection_prob, point_estimate };

std::string_view decision_mode_label(DecisionMode mode);
DecisionMode parse_decision_mode(std::string_view token);

struct EngineConfig {
    std::uint64_t total_budget = 0;  // K, total samples across all hypotheses
    std::size_t iterations = 10;     // n_max, posterior updates
    std::size_t resamples = 1000;    // R, repetitions for weights and decisions
    double cutoff = 0.5;             // rejected iff r/R > cutoff
    DecisionMode decision_mode = DecisionMode::empirical_rejection_prob;

    // Delta, samples allocated per iteration.
    std::uint64_t batch_size() const { return total_budget / iterations; }

    // Throws config_error when batch_size() < 1, resamples < 1 or cutoff
    // outside (0,1).
    void validate() const;
};

struct WeightResult {
    std::vector<double> weights;                 // each in [0,0.5], or 1/m fallback
    std::vector<std::uint32_t> rejection_counts; // r_i in [0,R]
    bool fallback_applied = false;
};

struct HypothesisDecision {
    std::uint64_t samples = 0;      // k_i
    std::uint64_t exceedances = 0;  // S_i
    std::uint32_t rejection_count = 0;
    double rejection_probability = std::numeric_limits<double>::quiet_NaN();  // r/R
    bool rejected = false;
};

struct DecisionReport {
    DecisionMode mode = DecisionMode::empirical_rejection_prob;
    std::size_t resamples = 0;
    double cutoff = 0.5;
    std::vector<HypothesisDecision> hypotheses;

    std::uint64_t total_samples() const;
    RejectionSet rejected_indices() const;
};

// Thrown when the sample source runs dry mid-run; carries the tallies
// accumulated up to the failing batch.
struct partial_run_error : std::runtime_error {
    std::size_t hypothesis_id = 0;  // 1-based
    std::uint64_t requested = 0;
    std::uint64_t available = 0;
    std::vector<HypothesisState> states;

    partial_run_error(const source_exhausted& cause, std::vector<HypothesisState> partial)
        : std::runtime_error(cause.what()),
          hypothesis_id(cause.hypothesis_id),
          requested(cause.requested),
          available(cause.available),
          states(std::move(partial)) {}
};

// Rejection counts over `resamples` repetitions: each repetition draws one
// posterior p-value per hypothesis, evaluates the procedure at the rule's
// effective level on the resampled vector, and tallies rejections. Repetition
// r uses the substream derived from (pass_seed, r), so results are identical
// for every thread count.
std::vector<std::uint32_t> resample_rejection_counts(std::span<const HypothesisState> states,
                                                     const ProcedureSpec& proc,
                                                     const ThresholdRule& rule,
                                                     std::size_t resamples,
                                                     std::uint64_t pass_seed,
                                                     unsigned threads = 1);

// Stability weights w_i = min(r_i/R, 1 - r_i/R); uniform 1/m when all zero.
WeightResult compute_weights(std::span<const HypothesisState> states, const ProcedureSpec& proc,
                             const ThresholdRule& rule, std::size_t resamples,
                             std::uint64_t pass_seed, unsigned threads = 1);

// Residual sampling: after normalizing the weights, each hypothesis first
// receives floor(w_i * delta) samples; the remainder is assigned one sample
// at a time with probabilities proportional to the fractional parts. The
// result always sums to delta. Throws std::logic_error when all weights are
// zero (callers apply the uniform fallback first).
std::vector<std::uint64_t> residual_allocate(std::span<const double> weights, std::uint64_t delta,
                                             RngStream& rng);

struct ResampleDecisions {
    std::vector<std::uint32_t> rejection_counts;
    std::vector<char> rejected;  // r/R > cutoff, strict
};

// Post-termination decision pass: fresh resampling from the final posteriors.
ResampleDecisions final_decisions(std::span<const HypothesisState> states,
                                  const ProcedureSpec& proc, const ThresholdRule& rule,
                                  std::size_t resamples, double cutoff, std::uint64_t pass_seed,
                                  unsigned threads = 1);

// Decisions from pseudo-count point estimates: h(p_hat, alpha(p_hat)).
std::vector<char> final_decisions_point(std::span<const HypothesisState> states,
                                        const ProcedureSpec& proc, const ThresholdRule& rule);

// The full sequential run: iteration 1 allocates with uniform weights, later
// iterations with stability weights from posterior resampling; every
// iteration distributes batch_size() samples by residual sampling, draws them
// from the source and updates the tallies. Afterwards decisions are computed
// per decision_mode. Total spend is exactly iterations * batch_size().
DecisionReport run_quickmmctest(const EngineConfig& config, ExceedanceSource& source,
                                const ProcedureSpec& proc, const ThresholdRule& rule,
                                std::uint64_t seed, unsigned threads = 1);

}  // namespace qmmc

#endif  // QMMC_ENGINE_HPP
