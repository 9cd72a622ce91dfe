#pragma once

namespace qladder {

inline constexpr const char* library_version = "qladder 0.1.0";

}
