#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qmmc/baselines.hpp"
#include "qmmc/config.hpp"
#include "qmmc/errors.hpp"
#include "qmmc/report_io.hpp"
#include "qmmc/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitConfig = 2;
constexpr int kExitExhausted = 3;

struct CommonOverrides {
    std::optional<std::string> procedure;
    std::optional<std::string> threshold;
    std::optional<double> alpha;
    std::optional<std::uint64_t> budget;
    std::optional<std::uint64_t> iterations;
    std::optional<std::uint64_t> resamples;
    std::optional<double> cutoff;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> replications;
    std::optional<unsigned> threads;
    std::optional<std::string> method;
};

void add_common_options(CLI::App* cmd, CommonOverrides& o) {
    cmd->add_option("--method", o.method, "Restrict to one method: quickmmctest or naive");
    cmd->add_option("--procedure", o.procedure,
                    "Multiple-testing procedure: bonferroni, sidak, holm, simes, hochberg, bh, by");
    cmd->add_option("--threshold", o.threshold, "Threshold rule: constant or pounds-cheng");
    cmd->add_option("--alpha", o.alpha, "Nominal testing level in [0,1]");
    cmd->add_option("--budget", o.budget, "Total sample budget K");
    cmd->add_option("--iterations", o.iterations, "Posterior updates n_max");
    cmd->add_option("--resamples", o.resamples, "Resampling repetitions R");
    cmd->add_option("--cutoff", o.cutoff, "Rejection-probability cutoff in (0,1)");
    cmd->add_option("--seed", o.seed, "Root seed");
    cmd->add_option("--replications", o.replications, "Number of replications");
    cmd->add_option("--threads", o.threads, "Worker thread cap (results do not depend on it)");
}

void apply_overrides(qmmc::SimulationConfig& config, const CommonOverrides& o) {
    if (o.procedure) config.procedure = qmmc::ProcedureSpec::parse(*o.procedure);
    if (o.threshold) {
        config.rule = qmmc::ThresholdRule::parse(*o.threshold, config.rule.alpha_star);
    }
    if (o.alpha) config.rule.alpha_star = *o.alpha;
    if (o.iterations) config.iterations = static_cast<std::size_t>(*o.iterations);
    if (o.resamples) config.resamples = static_cast<std::size_t>(*o.resamples);
    if (o.cutoff) config.cutoff = *o.cutoff;
    if (o.seed) config.seed = *o.seed;
    if (o.replications) config.replications = static_cast<std::size_t>(*o.replications);
    if (o.threads) {
        if (*o.threads == 0) throw qmmc::config_error("invalid value '0' for 'threads'");
        config.threads = *o.threads;
    }
    if (o.method) config.methods = {qmmc::parse_method(*o.method)};
}

void apply_overrides(qmmc::RunConfig& config, const CommonOverrides& o) {
    if (o.method) config.method = qmmc::parse_method(*o.method);
    if (o.procedure) config.procedure = qmmc::ProcedureSpec::parse(*o.procedure);
    if (o.threshold) {
        config.rule = qmmc::ThresholdRule::parse(*o.threshold, config.rule.alpha_star);
    }
    if (o.alpha) config.rule.alpha_star = *o.alpha;
    if (o.budget) config.total_budget = *o.budget;
    if (o.iterations) config.iterations = static_cast<std::size_t>(*o.iterations);
    if (o.resamples) config.resamples = static_cast<std::size_t>(*o.resamples);
    if (o.cutoff) config.cutoff = *o.cutoff;
    if (o.seed) config.seed = *o.seed;
    if (o.threads) {
        if (*o.threads == 0) throw qmmc::config_error("invalid value '0' for 'threads'");
        config.threads = *o.threads;
    }
}

// Writes through a file when --out is given, stdout otherwise.
class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) : path_(path) {
        if (!path_.empty()) {
            file_.open(path_, std::ios::binary | std::ios::trunc);
            if (!file_) {
                throw qmmc::config_error("cannot open output file '" + path_ + "'");
            }
        }
    }

    std::ostream& stream() { return path_.empty() ? std::cout : file_; }

    void finish() {
        if (path_.empty()) return;
        file_.flush();
        if (!file_) throw std::runtime_error("failed writing output file '" + path_ + "'");
    }

private:
    std::string path_;
    std::ofstream file_;
};

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 const CommonOverrides& overrides, bool power_output) {
    qmmc::SimulationConfig config = qmmc::load_simulation_config(config_path);
    apply_overrides(config, overrides);
    config.validate();

    const std::vector<qmmc::MetricsRecord> records = qmmc::run_study(config);
    const qmmc::KeyValueList echo = qmmc::echo_simulation_config(config);

    OutputTarget out(out_path);
    if (power_output) {
        qmmc::write_power_csv(out.stream(), echo, config, records);
    } else {
        qmmc::write_metrics_csv(out.stream(), echo, config, records);
    }
    out.finish();

    if (!out_path.empty()) {
        qmmc::print_study_summary(std::cout, config, records);
    }
    return kExitOk;
}

int cmd_run(const std::string& data_path, const std::string& config_path,
            const std::string& out_path, const CommonOverrides& overrides) {
    qmmc::RunConfig config;
    if (!config_path.empty()) {
        for (const auto& [key, value] : qmmc::parse_key_value_file(config_path)) {
            qmmc::apply_run_key(config, key, value);
        }
    }
    apply_overrides(config, overrides);

    qmmc::RecordedStatisticsSource source = qmmc::RecordedStatisticsSource::from_file(data_path);
    const std::size_t m = source.hypothesis_count();

    qmmc::DecisionReport report;
    if (config.method == qmmc::Method::naive) {
        const std::uint64_t per_hypothesis = config.total_budget / m;
        report = qmmc::run_naive(per_hypothesis, source, config.procedure, config.rule,
                                 config.seed);
    } else {
        qmmc::EngineConfig engine{config.total_budget, config.iterations, config.resamples,
                                  config.cutoff, config.decision_mode};
        report = qmmc::run_quickmmctest(engine, source, config.procedure, config.rule,
                                        config.seed, config.threads);
    }

    qmmc::KeyValueList echo = qmmc::echo_run_config(config);
    echo.emplace_back("data", data_path);

    OutputTarget out(out_path);
    qmmc::write_decisions_csv(out.stream(), echo, report);
    out.finish();
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(qmmc::kToolName) +
                 " - sequential Monte Carlo budget allocation for multiple hypothesis testing"};
    app.require_subcommand(1);

    std::string sim_config, sim_out;
    CommonOverrides sim_overrides;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "Run a simulation study and write per-replication metrics CSV");
    simulate->add_option("--config", sim_config, "Study configuration file")->required();
    simulate->add_option("--out", sim_out, "Output CSV path (stdout when omitted)");
    add_common_options(simulate, sim_overrides);

    std::string run_data, run_config, run_out;
    CommonOverrides run_overrides;
    CLI::App* run = app.add_subcommand(
        "run", "Apply a method to a recorded-statistics file and write decisions CSV");
    run->add_option("--data", run_data, "Recorded statistics file")->required();
    run->add_option("--config", run_config, "Optional run configuration file");
    run->add_option("--out", run_out, "Output CSV path (stdout when omitted)");
    add_common_options(run, run_overrides);

    std::string power_config, power_out;
    CommonOverrides power_overrides;
    CLI::App* power = app.add_subcommand(
        "power", "Run a power study over an effort grid and write aggregated CSV");
    power->add_option("--config", power_config, "Study configuration file")->required();
    power->add_option("--out", power_out, "Output CSV path (stdout when omitted)");
    add_common_options(power, power_overrides);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (app.got_subcommand(simulate)) {
            return cmd_simulate(sim_config, sim_out, sim_overrides, false);
        }
        if (app.got_subcommand(run)) {
            return cmd_run(run_data, run_config, run_out, run_overrides);
        }
        if (app.got_subcommand(power)) {
            return cmd_simulate(power_config, power_out, power_overrides, true);
        }
        return kExitInternal;
    } catch (const qmmc::partial_run_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitExhausted;
    } catch (const qmmc::source_exhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitExhausted;
    } catch (const qmmc::format_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const qmmc::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const qmmc::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
