#pragma once

#include <cstdint>
#include <random>

namespace hetsim {

// Named random streams split from one root seed. Each model draws from its
// own stream so that switching a model on or off leaves the others intact.
enum class Stream : std::uint64_t {
  Placement = 1,
  Shadowing = 2,
  Fading = 3,
  Traffic = 4,
  Mobility = 5,
};

std::uint64_t splitmix64(std::uint64_t x);

// Deterministic 64-bit seed for (root, stream, a, b).
std::uint64_t derive_seed(std::uint64_t root, Stream stream, std::uint64_t a = 0,
                          std::uint64_t b = 0);

inline std::mt19937_64 make_stream(std::uint64_t root, Stream stream, std::uint64_t a = 0,
                                   std::uint64_t b = 0) {
  return std::mt19937_64{derive_seed(root, stream, a, b)};
}

}  // namespace hetsim
