#pragma once

namespace orlicz {

inline constexpr const char* kVersion = "1.0.0";

} // namespace orlicz
