#include "qmmc/report_io.hpp"

#include <cmath>
#include <cstdio>

#include "qmmc/version.hpp"

namespace qmmc {

std::string format_metric(double value) {
    if (std::isnan(value)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

void write_audit_header(std::ostream& out, const KeyValueList& config_echo) {
    out << "# " << kToolName << " " << kToolVersion << "\n";
    for (const auto& [key, value] : config_echo) {
        out << "# " << key << " = " << value << "\n";
    }
}

void write_metrics_csv(std::ostream& out, const KeyValueList& config_echo,
                       const std::vector<MetricsRecord>& records) {
    write_audit_header(out, config_echo);
    out << "replication,seed,method,procedure,threshold_rule,alpha,effort,rejections,switched,"
           "switched_rejections,power,fnp,spend\n";
    for (const MetricsRecord& r : records) {
        out << r.replication << ',' << r.seed << ',' << method_label(r.method) << ','
            << ProcedureSpec{r.procedure}.label() << ','
            << ThresholdRule{r.rule, r.alpha}.label() << ',' << format_metric(r.alpha) << ','
            << r.effort << ',' << r.rejections << ',' << r.switched << ','
            << r.switched_rejections << ',' << format_metric(r.power) << ','
            << format_metric(r.fnp) << ',' << r.spend << '\n';
    }
}

void write_decisions_csv(std::ostream& out, const KeyValueList& config_echo,
                         const DecisionReport& report) {
    write_audit_header(out, config_echo);
    out << "hypothesis_id,samples,exceedances,point_estimate,rejection_prob,decision\n";
    for (std::size_t i = 0; i < report.hypotheses.size(); ++i) {
        const HypothesisDecision& h = report.hypotheses[i];
        const double estimate =
            point_estimate(HypothesisState{h.samples, h.exceedances});
        out << (i + 1) << ',' << h.samples << ',' << h.exceedances << ','
            << format_metric(estimate) << ',' << format_metric(h.rejection_probability) << ','
            << (h.rejected ? 1 : 0) << '\n';
    }
}

void write_power_csv(std::ostream& out, const KeyValueList& config_echo,
                     const SimulationConfig& config, const std::vector<MetricsRecord>& records) {
    write_audit_header(out, config_echo);
    out << "effort,method,procedure,mean_power,se_power,mean_one_minus_fnp,se\n";
    for (std::uint64_t effort : config.efforts) {
        for (Method method : config.methods) {
            std::vector<double> power;
            std::vector<double> one_minus_fnp;
            for (const MetricsRecord& r : records) {
                if (r.effort != effort || r.method != method) continue;
                power.push_back(r.power);
                one_minus_fnp.push_back(1.0 - r.fnp);
            }
            const Aggregate p = aggregate(power);
            const Aggregate f = aggregate(one_minus_fnp);
            out << effort << ',' << method_label(method) << ',' << config.procedure.label() << ','
                << format_metric(p.mean) << ',' << format_metric(p.se) << ','
                << format_metric(f.mean) << ',' << format_metric(f.se) << '\n';
        }
    }
}

void print_study_summary(std::ostream& out, const SimulationConfig& config,
                         const std::vector<MetricsRecord>& records) {
    for (Method method : config.methods) {
        for (std::uint64_t effort : config.efforts) {
            std::vector<double> rejections, switched, switched_rejections, power, fnp;
            for (const MetricsRecord& r : records) {
                if (r.effort != effort || r.method != method) continue;
                rejections.push_back(static_cast<double>(r.rejections));
                switched.push_back(static_cast<double>(r.switched));
                switched_rejections.push_back(static_cast<double>(r.switched_rejections));
                power.push_back(r.power);
                fnp.push_back(r.fnp);
            }
            const Aggregate rej = aggregate(rejections);
            const Aggregate sw = aggregate(switched);
            const Aggregate swr = aggregate(switched_rejections);
            const Aggregate pw = aggregate(power);
            const Aggregate fn = aggregate(fnp);
            out << method_label(method) << " effort=" << effort
                << " replications=" << rej.count << "\n"
                << "  rejections          " << format_metric(rej.mean) << " (se "
                << format_metric(rej.se) << ")\n"
                << "  switched            " << format_metric(sw.mean) << " (se "
                << format_metric(sw.se) << ")\n"
                << "  switched_rejections " << format_metric(swr.mean) << " (se "
                << format_metric(swr.se) << ")\n"
                << "  power               " << format_metric(pw.mean) << " (se "
                << format_metric(pw.se) << ")\n"
                << "  fnp                 " << format_metric(fn.mean) << " (se "
                << format_metric(fn.se) << ")\n";
        }
    }
}

}  // namespace qmmc
