#include "qmmc/samplers.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "qmmc/errors.hpp"

namespace qmmc {

BernoulliOracle::BernoulliOracle(std::vector<double> true_p) : true_p_(std::move(true_p)) {
    for (double p : true_p_) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw input_error("Bernoulli oracle p-values must lie in [0,1]");
        }
    }
}

std::uint64_t BernoulliOracle::draw_batch(std::size_t index, std::uint64_t count, RngStream& rng) {
    if (index >= true_p_.size()) {
        throw input_error("hypothesis index out of range");
    }
    return rng.binomial(count, true_p_[index]);
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view field, std::size_t line_no, const char* what) {
    field = trim(field);
    double value = 0.0;
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw format_error(std::string("invalid ") + what + " '" + std::string(field) + "'",
                           line_no);
    }
    return value;
}

}  // namespace

RecordedStatisticsSource RecordedStatisticsSource::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw format_error("cannot open statistics file '" + path.string() + "'", 0);
    }
    return from_stream(in);
}

RecordedStatisticsSource RecordedStatisticsSource::from_stream(std::istream& in) {
    struct Pending {
        bool has_observed = false;
        double observed = 0.0;
        std::vector<double> statistics;
    };
    std::map<std::uint64_t, Pending> parsed;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;

        const auto c1 = stripped.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : stripped.find(',', c1 + 1);
        if (c1 == std::string_view::npos || c2 == std::string_view::npos ||
            stripped.find(',', c2 + 1) != std::string_view::npos) {
            throw format_error("expected 'hypothesis_id,kind,value'", line_no);
        }
        const double id_value = parse_number(stripped.substr(0, c1), line_no, "hypothesis id");
        if (id_value < 1 || id_value != static_cast<std::uint64_t>(id_value)) {
            throw format_error("hypothesis ids must be integers >= 1", line_no);
        }
        const auto id = static_cast<std::uint64_t>(id_value);
        const std::string_view kind = trim(stripped.substr(c1 + 1, c2 - c1 - 1));
        const double value = parse_number(stripped.substr(c2 + 1), line_no, "statistic value");

        Pending& entry = parsed[id];
        if (kind == "obs") {
            if (entry.has_observed) {
                throw format_error("duplicate obs line for hypothesis " + std::to_string(id),
                                   line_no);
            }
            entry.has_observed = true;
            entry.observed = value;
        } else if (kind == "mc") {
            entry.statistics.push_back(value);
        } else {
            throw format_error("unknown record kind '" + std::string(kind) +
                                   "' (expected obs or mc)",
                               line_no);
        }
    }

    if (parsed.empty()) {
        throw format_error("statistics file contains no records", 0);
    }

    RecordedStatisticsSource source;
    source.hypotheses_.reserve(parsed.size());
    std::uint64_t expected = 1;
    for (auto& [id, entry] : parsed) {
        if (id != expected) {
            throw format_error("hypothesis ids must be contiguous starting at 1; missing id " +
                                   std::to_string(expected),
                               0);
        }
        if (!entry.has_observed) {
            throw format_error("hypothesis " + std::to_string(id) + " has no obs line", 0);
        }
        Hypothesis h;
        h.observed = entry.observed;
        h.statistics = std::move(entry.statistics);
        source.hypotheses_.push_back(std::move(h));
        ++expected;
    }
    return source;
}

std::uint64_t RecordedStatisticsSource::remaining(std::size_t index) const {
    const Hypothesis& h = hypotheses_[index];
    return h.statistics.size() - h.cursor;
}

std::uint64_t RecordedStatisticsSource::draw_batch(std::size_t index, std::uint64_t count,
                                                   RngStream&) {
    if (index >= hypotheses_.size()) {
        throw input_error("hypothesis index out of range");
    }
    Hypothesis& h = hypotheses_[index];
    const std::uint64_t left = h.statistics.size() - h.cursor;
    if (count > left) {
        throw source_exhausted(index + 1, count, left);
    }
    std::uint64_t exceedances = 0;
    for (std::uint64_t j = 0; j < count; ++j) {
        exceedances += h.statistics[h.cursor + j] >= h.observed;
    }
    h.cursor += count;
    return exceedances;
}

}  // namespace qmmc
