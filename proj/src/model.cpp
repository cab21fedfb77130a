#include "qmmc/model.hpp"

#include <stdexcept>

namespace qmmc {

PosteriorParams posterior_params(const HypothesisState& state) {
    return {1.0 + static_cast<double>(state.exceedances),
            1.0 + static_cast<double>(state.samples - state.exceedances)};
}

HypothesisState update_state(const HypothesisState& state, std::uint64_t new_exceedances,
                             std::uint64_t new_samples) {
    if (new_exceedances > new_samples) {
        throw std::logic_error("update_state: exceedances exceed the batch size");
    }
    return {state.samples + new_samples, state.exceedances + new_exceedances};
}

double sample_posterior(const HypothesisState& state, RngStream& rng) {
    const PosteriorParams post = posterior_params(state);
    return rng.beta(post.a, post.b);
}

double point_estimate(const HypothesisState& state) {
    return (static_cast<double>(state.exceedances) + 1.0) /
           (static_cast<double>(state.samples) + 1.0);
}

}  // namespace qmmc
