#pragma once

namespace gatesim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gatesim
