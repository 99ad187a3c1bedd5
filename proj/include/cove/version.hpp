#pragma once

namespace cove {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cove
