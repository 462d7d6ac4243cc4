#pragma once

namespace kyfan {

inline constexpr const char* version = "0.1.0";

}  // namespace kyfan
