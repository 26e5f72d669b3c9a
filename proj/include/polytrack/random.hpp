#pragma once

#include <numbers>
#include <random>

#include "polytrack/types.hpp"

namespace polytrack {

// Distributions are hand-rolled on top of mt19937_64 so that seeded streams
// are identical across standard library implementations.

inline double uniform01(std::mt19937_64& gen) {
  return double(gen() >> 11) * 0x1.0p-53;  // [0, 1), 53 bits
}

inline Complex unit_complex(std::mt19937_64& gen) {
  const double angle = 2.0 * std::numbers::pi * uniform01(gen);
  return {std::cos(angle), std::sin(angle)};
}

/// Independent standard normal real and imaginary parts (Box-Muller).
inline Complex complex_gaussian(std::mt19937_64& gen) {
  const double u1 = 1.0 - uniform01(gen);  // (0, 1], keeps the log finite
  const double u2 = uniform01(gen);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace polytrack
