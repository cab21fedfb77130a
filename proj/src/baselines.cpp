#include "qmmc/baselines.hpp"

#include <string>
#include <vector>

#include "qmmc/errors.hpp"

namespace qmmc {

DecisionReport run_naive(std::uint64_t samples_per_hypothesis, ExceedanceSource& source,
                         const ProcedureSpec& proc, const ThresholdRule& rule,
                         std::uint64_t seed) {
    if (samples_per_hypothesis == 0) {
        throw config_error("the naive method needs at least one sample per hypothesis");
    }
    const std::size_t m = source.hypothesis_count();
    if (m == 0) throw config_error("source serves no hypotheses");

    RngStream source_rng(derive_stream(seed, stream_tag::source));
    std::vector<HypothesisState> states(m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::uint64_t exceedances =
            source.draw_batch(i, samples_per_hypothesis, source_rng);
        states[i] = update_state(states[i], exceedances, samples_per_hypothesis);
    }

    const std::vector<char> rejected = final_decisions_point(states, proc, rule);

    DecisionReport report;
    report.mode = DecisionMode::point_estimate;
    report.hypotheses.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        report.hypotheses[i].samples = states[i].samples;
        report.hypotheses[i].exceedances = states[i].exceedances;
        report.hypotheses[i].rejected = rejected[i];
    }
    return report;
}

}  // namespace qmmc
