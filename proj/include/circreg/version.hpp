#pragma once

namespace circreg {

inline constexpr const char* kVersion = "1.0.0";

} // namespace circreg
