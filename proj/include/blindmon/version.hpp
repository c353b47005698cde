#ifndef BLINDMON_VERSION_HPP_
#define BLINDMON_VERSION_HPP_

#include <string_view>

namespace blindmon {

inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace blindmon

#endif  // BLINDMON_VERSION_HPP_
