#pragma once

namespace adapart {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace adapart
