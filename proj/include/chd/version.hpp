#pragma once

namespace chd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace chd
