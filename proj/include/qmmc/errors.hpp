#ifndef QMMC_ERRORS_HPP
#define QMMC_ERRORS_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qmmc {

// Invalid configuration (bad parameter values, unknown keys, unusable files).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid data handed to an operation (NaN p-values, mismatched lengths, ...).
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input file; `line` is 1-based, 0 when not tied to a line.
struct format_error : std::runtime_error {
    std::size_t line = 0;

    format_error(const std::string& msg, std::size_t line_no)
        : std::runtime_error(line_no > 0 ? msg + " (line " + std::to_string(line_no) + ")" : msg),
          line(line_no) {}
};

// A sample source could not serve a requested batch.
struct source_exhausted : std::runtime_error {
    std::size_t hypothesis_id = 0;  // 1-based
    std::uint64_t requested = 0;
    std::uint64_t available = 0;

    source_exhausted(std::size_t id, std::uint64_t req, std::uint64_t avail)
        : std::runtime_error("sample source exhausted for hypothesis " + std::to_string(id) +
                             ": requested " + std::to_string(req) + ", only " +
                             std::to_string(avail) + " remaining"),
          hypothesis_id(id),
          requested(req),
          available(avail) {}
};

}  // namespace qmmc

#endif  // QMMC_ERRORS_HPP
