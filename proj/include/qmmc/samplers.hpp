#ifndef QMMC_SAMPLERS_HPP
#define QMMC_SAMPLERS_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <vector>

#include "qmmc/rng.hpp"

namespace qmmc {

// Abstraction through which the algorithms draw Monte Carlo samples: a batch
// request for hypothesis `index` returns how many of `count` fresh samples
// exceeded the observed statistic.
class ExceedanceSource {
public:
    virtual ~ExceedanceSource() = default;

    virtual std::size_t hypothesis_count() const = 0;

    // Exceedances among `count` new samples for hypothesis `index` (0-based).
    // Throws source_exhausted when the source cannot serve the batch.
    virtual std::uint64_t draw_batch(std::size_t index, std::uint64_t count, RngStream& rng) = 0;
};

// Synthetic source: each sample for hypothesis i is an independent Bernoulli
// trial with success probability equal to the fixed p-value true_p[i].
class BernoulliOracle final : public ExceedanceSource {
public:
    // Throws input_error unless every entry lies in [0,1].
    explicit BernoulliOracle(std::vector<double> true_p);

    std::size_t hypothesis_count() const override { return true_p_.size(); }
    std::uint64_t draw_batch(std::size_t index, std::uint64_t count, RngStream& rng) override;

    const std::vector<double>& true_p() const { return true_p_; }

private:
    std::vector<double> true_p_;
};

// Replays precomputed Monte Carlo statistics (permutation or bootstrap runs
// recorded offline). A sampled statistic >= the observed one counts as an
// exceedance. Statistics are consumed in file order and never recycled;
// running out raises source_exhausted.
//
// File format: UTF-8 text, one record per line, `hypothesis_id,kind,value`
// with kind in {obs, mc}; `#` starts a comment line; exactly one obs line per
// hypothesis; ids are contiguous integers starting at 1.
class RecordedStatisticsSource final : public ExceedanceSource {
public:
    static RecordedStatisticsSource from_file(const std::filesystem::path& path);
    static RecordedStatisticsSource from_stream(std::istream& in);

    std::size_t hypothesis_count() const override { return hypotheses_.size(); }
    std::uint64_t draw_batch(std::size_t index, std::uint64_t count, RngStream& rng) override;

    double observed(std::size_t index) const { return hypotheses_[index].observed; }
    std::uint64_t remaining(std::size_t index) const;

private:
    struct Hypothesis {
        double observed = 0.0;
        std::vector<double> statistics;
        std::size_t cursor = 0;
    };

    std::vector<Hypothesis> hypotheses_;
};

}  // namespace qmmc

#endif  // QMMC_SAMPLERS_HPP
