#pragma once

namespace vgsd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace vgsd
