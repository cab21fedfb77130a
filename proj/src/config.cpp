#include "qmmc/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "qmmc/errors.hpp"

namespace qmmc {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
    throw config_error("invalid value '" + value + "' for '" + key + "'");
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t out = 0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) bad_value(key, value);
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) bad_value(key, value);
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    bad_value(key, value);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

std::string format_double_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

KeyValueList parse_key_value_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw format_error("cannot open config file '" + path.string() + "'", 0);
    }
    KeyValueList entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw format_error("expected 'key = value'", line_no);
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw format_error("empty key", line_no);
        }
        entries.emplace_back(key, value);
    }
    return entries;
}

void apply_simulation_key(SimulationConfig& config, const std::string& key,
                          const std::string& value) {
    if (key == "m") {
        config.hypothesis_count = static_cast<std::size_t>(parse_u64(key, value));
    } else if (key == "pi1") {
        config.pi1 = parse_double(key, value);
    } else if (key == "alt_beta_a") {
        config.alt_beta_a = parse_double(key, value);
    } else if (key == "alt_beta_b") {
        config.alt_beta_b = parse_double(key, value);
    } else if (key == "replications") {
        config.replications = static_cast<std::size_t>(parse_u64(key, value));
    } else if (key == "seed") {
        config.seed = parse_u64(key, value);
    } else if (key == "efforts") {
        config.efforts.clear();
        for (const std::string& item : split_list(value)) {
            config.efforts.push_back(parse_u64(key, item));
        }
        if (config.efforts.empty()) bad_value(key, value);
    } else if (key == "methods") {
        config.methods.clear();
        for (const std::string& item : split_list(value)) {
            config.methods.push_back(parse_method(item));
        }
        if (config.methods.empty()) bad_value(key, value);
    } else if (key == "procedure") {
        config.procedure = ProcedureSpec::parse(value);
    } else if (key == "threshold_rule") {
        config.rule = ThresholdRule::parse(value, config.rule.alpha_star);
    } else if (key == "alpha") {
        config.rule.alpha_star = parse_double(key, value);
    } else if (key == "n_max") {
        config.iterations = static_cast<std::size_t>(parse_u64(key, value));
    } else if (key == "R") {
        config.resamples = static_cast<std::size_t>(parse_u64(key, value));
    } else if (key == "cutoff") {
        config.cutoff = parse_double(key, value);
    } else if (key == "decision_mode") {
        config.decision_mode = parse_decision_mode(value);
    } else if (key == "fixed_set") {
        config.fixed_set = parse_bool(key, value);
    } else if (key == "fixed_set_seed") {
        config.fixed_set_seed = parse_u64(key, value);
    } else if (key == "threads") {
        config.threads = static_cast<unsigned>(parse_u64(key, value));
        if (config.threads == 0) bad_value(key, value);
    } else {
        throw config_error("unknown configuration key '" + key + "'");
    }
}

SimulationConfig load_simulation_config(const std::filesystem::path& path) {
    SimulationConfig config;
    for (const auto& [key, value] : parse_key_value_file(path)) {
        apply_simulation_key(config, key, value);
    }
    return config;
}

KeyValueList echo_simulation_config(const SimulationConfig& config) {
    KeyValueList out;
    out.emplace_back("m", std::to_string(config.hypothesis_count));
    out.emplace_back("pi1", format_double_value(config.pi1));
    out.emplace_back("alt_beta_a", format_double_value(config.alt_beta_a));
    out.emplace_back("alt_beta_b", format_double_value(config.alt_beta_b));
    out.emplace_back("replications", std::to_string(config.replications));
    out.emplace_back("seed", std::to_string(config.seed));
    {
        std::string efforts;
        for (std::size_t i = 0; i < config.efforts.size(); ++i) {
            if (i) efforts += ',';
            efforts += std::to_string(config.efforts[i]);
        }
        out.emplace_back("efforts", efforts);
    }
    {
        std::string methods;
        for (std::size_t i = 0; i < config.methods.size(); ++i) {
            if (i) methods += ',';
            methods += method_label(config.methods[i]);
        }
        out.emplace_back("methods", methods);
    }
    out.emplace_back("procedure", std::string(config.procedure.label()));
    out.emplace_back("threshold_rule", std::string(config.rule.label()));
    out.emplace_back("alpha", format_double_value(config.rule.alpha_star));
    out.emplace_back("n_max", std::to_string(config.iterations));
    out.emplace_back("R", std::to_string(config.resamples));
    out.emplace_back("cutoff", format_double_value(config.cutoff));
    out.emplace_back("decision_mode", std::string(decision_mode_label(config.decision_mode)));
    out.emplace_back("fixed_set", config.fixed_set ? "true" : "false");
    out.emplace_back("fixed_set_seed", std::to_string(config.fixed_set_seed));
    return out;
}

void apply_run_key(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "method") {
        config.method = parse_method(value);
    } else if (key == "procedure") {
        config.procedure = ProcedureSpec::parse(value);
    } else if (key == "threshold_rule") {
        config.rule = ThresholdRule::parse(value, config.rule.alpha_star);
    } else if (key == "alpha") {
        config.rule.alpha_star = parse_double(key, value);
    } else if (key == "K") {
        config.total_budget = parse_u64(key, value);
    } else if (key == "n_max") {
        config.iterations = static_cast<std::size_t>(parse_u64(key, value));
    } else if (key == "R") {
        config.resamples = static_cast<std::size_t>(parse_u64(key, value));
    } else if (key == "cutoff") {
        config.cutoff = parse_double(key, value);
    } else if (key == "decision_mode") {
        config.decision_mode = parse_decision_mode(value);
    } else if (key == "seed") {
        config.seed = parse_u64(key, value);
    } else if (key == "threads") {
        config.threads = static_cast<unsigned>(parse_u64(key, value));
        if (config.threads == 0) bad_value(key, value);
    } else {
        throw config_error("unknown configuration key '" + key + "'");
    }
}

KeyValueList echo_run_config(const RunConfig& config) {
    KeyValueList out;
    out.emplace_back("method", std::string(method_label(config.method)));
    out.emplace_back("procedure", std::string(config.procedure.label()));
    out.emplace_back("threshold_rule", std::string(config.rule.label()));
    out.emplace_back("alpha", format_double_value(config.rule.alpha_star));
    out.emplace_back("K", std::to_string(config.total_budget));
    out.emplace_back("n_max", std::to_string(config.iterations));
    out.emplace_back("R", std::to_string(config.resamples));
    out.emplace_back("cutoff", format_double_value(config.cutoff));
    out.emplace_back("decision_mode", std::string(decision_mode_label(config.decision_mode)));
    out.emplace_back("seed", std::to_string(config.seed));
    return out;
}

}  // namespace qmmc
