#ifndef QMMC_VERSION_HPP
#define QMMC_VERSION_HPP

#include <string_view>

namespace qmmc {

inline constexpr std::string_view kToolName = "qmmctest";
inline constexpr std::string_view kToolVersion = "0.1.0";

}  // namespace qmmc

#endif  // QMMC_VERSION_HPP
