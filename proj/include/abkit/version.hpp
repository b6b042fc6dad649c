#pragma once

namespace abkit {
inline constexpr const char* kVersion = "0.1.0";
}
