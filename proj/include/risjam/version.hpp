#pragma once

namespace risjam {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace risjam
