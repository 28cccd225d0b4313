#pragma once

namespace hlp {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace hlp
