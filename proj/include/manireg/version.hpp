#pragma once

namespace manireg {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace manireg
