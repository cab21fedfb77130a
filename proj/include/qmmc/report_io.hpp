#ifndef QMMC_REPORT_IO_HPP
#define QMMC_REPORT_IO_HPP

#include <ostream>
#include <string>

#include "qmmc/config.hpp"
#include "qmmc/engine.hpp"
#include "qmmc/experiments.hpp"

namespace qmmc {

// Doubles are printed with 6 significant digits; NaN prints as "nan".
std::string format_metric(double value);

// `# tool version` plus `# key = value` audit lines; every output file
// starts with these so any run can be replayed from its own header.
void write_audit_header(std::ostream& out, const KeyValueList& config_echo);

// One row per MetricsRecord:
// replication,seed,method,procedure,threshold_rule,alpha,effort,rejections,
// switched,switched_rejections,power,fnp,spend
void write_metrics_csv(std::ostream& out, const KeyValueList& config_echo,
                       const std::vector<MetricsRecord>& records);

// Per-hypothesis rows:
// hypothesis_id,samples,exceedances,point_estimate,rejection_prob,decision
void write_decisions_csv(std::ostream& out, const KeyValueList& config_echo,
                         const DecisionReport& report);

// Aggregated power-curve rows:
// effort,method,procedure,mean_power,se_power,mean_one_minus_fnp,se
void write_power_csv(std::ostream& out, const KeyValueList& config_echo,
                     const SimulationConfig& config, const std::vector<MetricsRecord>& records);

// Human-readable per-(method, effort) means with standard errors.
void print_study_summary(std::ostream& out, const SimulationConfig& config,
                         const std::vector<MetricsRecord>& records);

}  // namespace qmmc

#endif  // QMMC_REPORT_IO_HPP
