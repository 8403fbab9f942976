#pragma once

namespace rabi3 {

inline constexpr const char* version = "0.1.0";

} // namespace rabi3
