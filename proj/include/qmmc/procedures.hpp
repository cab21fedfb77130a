#ifndef QMMC_PROCEDURES_HPP
#define QMMC_PROCEDURES_HPP

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace qmmc {

enum class ProcedureName { bonferroni, sidak, holm, simes, hochberg, bh, by };

enum class Direction { single_step, step_down, step_up };

// Indices (0-based) of rejected hypotheses, sorted ascending, no duplicates.
using RejectionSet = std::vector<std::size_t>;

// A multiple-testing procedure: a name, its scan direction, and the rule
// producing per-rank critical values tau_1 <= ... <= tau_m from (m, alpha).
struct ProcedureSpec {
    ProcedureName name = ProcedureName::bh;

    Direction direction() const;
    std::string_view label() const;

    // Accepts {bonferroni, sidak, holm, simes, hochberg, bh, by}.
    static ProcedureSpec parse(std::string_view token);
};

enum class ThresholdKind { constant, pounds_cheng };

// How the testing threshold is obtained: a constant alpha_star, or the
// adaptive correction alpha_star / pi0_hat(p).
struct ThresholdRule {
    ThresholdKind kind = ThresholdKind::constant;
    double alpha_star = 0.1;

    std::string_view label() const;

    // Accepts {constant, pounds-cheng}; validates alpha in [0,1].
    static ThresholdRule parse(std::string_view token, double alpha);
};

// Critical values tau_1..tau_m for the procedure at level alpha.
// Throws config_error unless m >= 1 and alpha in [0,1].
std::vector<double> threshold_sequence(const ProcedureSpec& proc, std::size_t m, double alpha);

// Applies the procedure to a p-value vector. Hypotheses with equal p-values
// are decided as a block: after the cut rank k is found on the sorted values,
// every hypothesis with p_i <= p_(k) is rejected. Comparisons use <=.
// Throws input_error on NaN / out-of-range p-values or invalid alpha.
RejectionSet apply_procedure(const ProcedureSpec& proc, std::span<const double> p, double alpha);

// min(1, 2/m * sum(p)) estimate of the proportion of true nulls, floored to
// the smallest positive double so that callers may divide by it.
double estimate_pi0(std::span<const double> p);

// Resolves the rule to a level: alpha_star, or alpha_star / estimate_pi0(p).
// The adaptive value may exceed 1 when pi0_hat < alpha_star.
double effective_alpha(const ThresholdRule& rule, std::span<const double> p);

// Reusable procedure evaluation with caller-owned scratch; the hot path for
// resampling loops. `rejected` must have p.size() entries; returns the number
// of rejections. Skips input validation.
class ProcedureEvaluator {
public:
    ProcedureEvaluator(ProcedureSpec spec, std::size_t m);

    std::size_t evaluate(std::span<const double> p, double alpha, std::span<char> rejected);

    // tau_i for 1-based rank at the given level.
    double rank_threshold(std::size_t rank, double alpha) const;

private:
    ProcedureSpec spec_;
    std::size_t m_;
    double harmonic_;  // sum_{j=1..m} 1/j, used by the by procedure
    std::vector<double> sorted_;
};

}  // namespace qmmc

#endif  // QMMC_PROCEDURES_HPP
