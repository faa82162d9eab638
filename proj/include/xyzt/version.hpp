#pragma once

namespace xyzt {

inline constexpr const char* kVersion = "1.0.0";

} // namespace xyzt
