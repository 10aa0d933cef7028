#pragma once

namespace logwell {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace logwell
