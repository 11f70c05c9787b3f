#pragma once

namespace wlrni {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace wlrni
