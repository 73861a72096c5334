#pragma once

namespace qmotion {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qmotion
