#ifndef QMMC_BASELINES_HPP
#define QMMC_BASELINES_HPP

#include <cstdint>

#include "qmmc/engine.hpp"

namespace qmmc {

// The fixed-budget baseline: draws exactly `samples_per_hypothesis` samples
// for every hypothesis, estimates each p-value with the pseudo-count
// (e_i + 1) / (s + 1) and applies the procedure to the estimates. Decisions
// are point-estimate based by construction. Throws config_error when
// samples_per_hypothesis is 0.
DecisionReport run_naive(std::uint64_t samples_per_hypothesis, ExceedanceSource& source,
                         const ProcedureSpec& proc, const ThresholdRule& rule, std::uint64_t seed);

}  // namespace qmmc

#endif  // QMMC_BASELINES_HPP
