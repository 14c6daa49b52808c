#pragma once

namespace wdmxpm {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace wdmxpm
