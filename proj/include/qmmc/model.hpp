#ifndef QMMC_MODEL_HPP
#define QMMC_MODEL_HPP

#include <cstdint>

#include "qmmc/rng.hpp"

namespace qmmc {

// Monte Carlo tallies for one hypothesis: samples drawn and exceedances of
// the sampled statistic over the observed one. Both are non-decreasing over a
// run and exceedances never exceed samples.
struct HypothesisState {
    std::uint64_t samples = 0;      // k
    std::uint64_t exceedances = 0;  // S
};

// Beta(1 + S, 1 + k - S) posterior parameters; both stay >= 1.
struct PosteriorParams {
    double a = 1.0;
    double b = 1.0;
};

PosteriorParams posterior_params(const HypothesisState& state);

// Adds a batch of tallies. Throws std::logic_error when
// new_exceedances > new_samples.
HypothesisState update_state(const HypothesisState& state, std::uint64_t new_exceedances,
                             std::uint64_t new_samples);

// One draw from the Beta(1 + S, 1 + k - S) posterior, in (0,1).
double sample_posterior(const HypothesisState& state, RngStream& rng);

// Pseudo-count estimate (S+1)/(k+1); bounded below by 1/(k+1).
double point_estimate(const HypothesisState& state);

}  // namespace qmmc

#endif  // QMMC_MODEL_HPP
