#pragma once

namespace curvnf {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace curvnf
