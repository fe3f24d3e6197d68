#pragma once

#include <chrono>
#include <cstdint>

namespace hetsim {

// Simulation time is integral microseconds so deadline comparisons are exact.
using SimTime = std::chrono::microseconds;

inline constexpr SimTime kTti{1000};
inline constexpr SimTime kSlot{500};

inline constexpr SimTime tti_start(std::int64_t tti_index) { return tti_index * kTti; }

inline double to_seconds(SimTime t) { return std::chrono::duration<double>(t).count(); }

inline SimTime from_seconds(double s) {
  return SimTime{static_cast<std::int64_t>(s * 1e6 + (s >= 0 ? 0.5 : -0.5))};
}

}  // namespace hetsim
