#pragma once

namespace iscr {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace iscr
