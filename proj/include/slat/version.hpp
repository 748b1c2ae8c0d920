#pragma once

namespace slat {

inline constexpr const char* kVersion = "0.1.0";

} // namespace slat
