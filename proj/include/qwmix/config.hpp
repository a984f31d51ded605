#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

namespace qwmix {

/// Threshold-mixing constant 1/(2e).
inline constexpr double kMixingThreshold = 1.0 / (2.0 * std::numbers::e);

inline constexpr std::size_t kDefaultStateCap = 65536;

/// Dense-state cap. Reads QWMIX_STATE_CAP once; falls back to 65536.
std::size_t state_cap();

/// Overrides the cap for the rest of the process (tests, CLI flags).
void set_state_cap(std::size_t cap);

/// Throws DimensionCap when `n` exceeds `cap`.
void check_cap(std::size_t n, std::size_t cap);
inline void check_cap(std::size_t n) { check_cap(n, state_cap()); }

/// Version string mixed into result cache keys.
inline constexpr const char* kCodeVersion = "qwmix-1.0.0";

}  // namespace qwmix
