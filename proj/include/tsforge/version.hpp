#pragma once

namespace tsforge {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace tsforge
