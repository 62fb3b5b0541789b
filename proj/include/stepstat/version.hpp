#pragma once

namespace stepstat {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace stepstat
