#include "qmmc/procedures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qmmc/errors.hpp"

namespace qmmc {

Direction ProcedureSpec::direction() const {
    switch (name) {
        case ProcedureName::bonferroni:
            return Direction::single_step;
        case ProcedureName::sidak:
        case ProcedureName::holm:
            return Direction::step_down;
        case ProcedureName::simes:
        case ProcedureName::hochberg:
        case ProcedureName::bh:
        case ProcedureName::by:
            return Direction::step_up;
    }
    return Direction::single_step;
}

std::string_view ProcedureSpec::label() const {
    switch (name) {
        case ProcedureName::bonferroni: return "bonferroni";
        case ProcedureName::sidak: return "sidak";
        case ProcedureName::holm: return "holm";
        case ProcedureName::simes: return "simes";
        case ProcedureName::hochberg: return "hochberg";
        case ProcedureName::bh: return "bh";
        case ProcedureName::by: return "by";
    }
    return "?";
}

ProcedureSpec ProcedureSpec::parse(std::string_view token) {
    if (token == "bonferroni") return {ProcedureName::bonferroni};
    if (token == "sidak") return {ProcedureName::sidak};
    if (token == "holm") return {ProcedureName::holm};
    if (token == "simes") return {ProcedureName::simes};
    if (token == "hochberg") return {ProcedureName::hochberg};
    if (token == "bh") return {ProcedureName::bh};
    if (token == "by") return {ProcedureName::by};
    throw config_error("unknown procedure '" + std::string(token) +
                       "' (expected bonferroni, sidak, holm, simes, hochberg, bh or by)");
}

std::string_view ThresholdRule::label() const {
    return kind == ThresholdKind::constant ? "constant" : "pounds-cheng";
}

ThresholdRule ThresholdRule::parse(std::string_view token, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw config_error("alpha must lie in [0,1]");
    }
    if (token == "constant") return {ThresholdKind::constant, alpha};
    if (token == "pounds-cheng" || token == "pounds_cheng") {
        return {ThresholdKind::pounds_cheng, alpha};
    }
    throw config_error("unknown threshold rule '" + std::string(token) +
                       "' (expected constant or pounds-cheng)");
}

namespace {

double harmonic_number(std::size_t m) {
    double h = 0.0;
    for (std::size_t j = 1; j <= m; ++j) h += 1.0 / static_cast<double>(j);
    return h;
}

double rank_threshold_impl(ProcedureName name, std::size_t m, double harmonic, std::size_t rank,
                           double alpha) {
    const double md = static_cast<double>(m);
    switch (name) {
        case ProcedureName::bonferroni:
            return alpha / md;
        case ProcedureName::sidak:
            // 1 - (1-alpha)^(1/(m-i+1))
            return -std::expm1(std::log1p(-alpha) / static_cast<double>(m - rank + 1));
        case ProcedureName::holm:
        case ProcedureName::hochberg:
            return alpha / static_cast<double>(m - rank + 1);
        case ProcedureName::simes:
        case ProcedureName::bh:
            return static_cast<double>(rank) * alpha / md;
        case ProcedureName::by:
            return static_cast<double>(rank) * alpha / (md * harmonic);
    }
    return 0.0;
}

}  // namespace

std::vector<double> threshold_sequence(const ProcedureSpec& proc, std::size_t m, double alpha) {
    if (m == 0) throw config_error("threshold_sequence requires m >= 1");
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw config_error("threshold_sequence requires alpha in [0,1]");
    }
    const double harmonic =
        proc.name == ProcedureName::by ? harmonic_number(m) : 0.0;
    std::vector<double> tau(m);
    for (std::size_t i = 1; i <= m; ++i) {
        tau[i - 1] = rank_threshold_impl(proc.name, m, harmonic, i, alpha);
    }
    return tau;
}

ProcedureEvaluator::ProcedureEvaluator(ProcedureSpec spec, std::size_t m)
    : spec_(spec),
      m_(m),
      harmonic_(spec.name == ProcedureName::by ? harmonic_number(m) : 0.0) {
    sorted_.reserve(m);
}

double ProcedureEvaluator::rank_threshold(std::size_t rank, double alpha) const {
    return rank_threshold_impl(spec_.name, m_, harmonic_, rank, alpha);
}

std::size_t ProcedureEvaluator::evaluate(std::span<const double> p, double alpha,
                                         std::span<char> rejected) {
    const std::size_t m = p.size();
    if (m == 0) return 0;

    if (spec_.direction() == Direction::single_step) {
        const double tau = rank_threshold(1, alpha);
        std::size_t count = 0;
        for (std::size_t i = 0; i < m; ++i) {
            rejected[i] = p[i] <= tau;
            count += rejected[i];
        }
        return count;
    }

    sorted_.assign(p.begin(), p.end());
    std::sort(sorted_.begin(), sorted_.end());

    std::size_t cut = 0;
    if (spec_.direction() == Direction::step_up) {
        for (std::size_t i = m; i >= 1; --i) {
            if (sorted_[i - 1] <= rank_threshold(i, alpha)) {
                cut = i;
                break;
            }
        }
    } else {
        for (std::size_t i = 1; i <= m; ++i) {
            if (sorted_[i - 1] <= rank_threshold(i, alpha)) {
                cut = i;
            } else {
                break;
            }
        }
    }

    if (cut == 0) {
        std::fill(rejected.begin(), rejected.end(), 0);
        return 0;
    }
    const double cutoff = sorted_[cut - 1];
    std::size_t count = 0;
    for (std::size_t i = 0; i < m; ++i) {
        rejected[i] = p[i] <= cutoff;
        count += rejected[i];
    }
    return count;
}

RejectionSet apply_procedure(const ProcedureSpec& proc, std::span<const double> p, double alpha) {
    for (double v : p) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw input_error("p-values must be finite and lie in [0,1]");
        }
    }
    if (!(alpha >= 0.0) || std::isinf(alpha)) {
        throw input_error("alpha must be finite and nonnegative");
    }
    if (p.empty()) return {};

    ProcedureEvaluator eval(proc, p.size());
    std::vector<char> rejected(p.size(), 0);
    eval.evaluate(p, alpha, rejected);

    RejectionSet set;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (rejected[i]) set.push_back(i);
    }
    return set;
}

double estimate_pi0(std::span<const double> p) {
    if (p.empty()) throw input_error("estimate_pi0 requires a nonempty p-value vector");
    double sum = 0.0;
    for (double v : p) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw input_error("p-values must be finite and lie in [0,1]");
        }
        sum += v;
    }
    const double pi0 = std::min(1.0, 2.0 * sum / static_cast<double>(p.size()));
    return std::max(pi0, std::numeric_limits<double>::min());
}

double effective_alpha(const ThresholdRule& rule, std::span<const double> p) {
    if (rule.kind == ThresholdKind::constant) return rule.alpha_star;
    return rule.alpha_star / estimate_pi0(p);
}

}  // namespace qmmc
