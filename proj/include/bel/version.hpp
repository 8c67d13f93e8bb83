#pragma once

namespace bel {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace bel
