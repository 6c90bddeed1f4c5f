#pragma once

namespace negdep {
inline constexpr const char* kVersion = "0.1.0";
}
