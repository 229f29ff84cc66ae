#pragma once

namespace cactus {

// Bumped whenever a change can alter any sampled or reported value.
inline constexpr const char* kVersion = "1.0.0";

}  // namespace cactus
