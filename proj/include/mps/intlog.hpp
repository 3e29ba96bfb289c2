#pragma once
// Small integer helpers: base-2 logarithms and the odd double factorial.

#include <bit>
#include <cstdint>
#include <stdexcept>

namespace mps {

constexpr bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

constexpr int floor_log2(std::uint64_t v) {
  if (v == 0) throw std::invalid_argument("floor_log2: argument must be positive");
  return 63 - std::countl_zero(v);
}

constexpr int ceil_log2(std::uint64_t v) {
  if (v == 0) throw std::invalid_argument("ceil_log2: argument must be positive");
  return v == 1 ? 0 : floor_log2(v - 1) + 1;
}

// (2k-1)!! = 1*3*5*...*(2k-1); odd_double_factorial(m) expects odd m >= -1.
// By convention (-1)!! = 1!! = 1. Overflows uint64 past m = 33, callers stay small.
constexpr std::uint64_t odd_double_factorial(std::int64_t m) {
  if (m < -1 || m % 2 == 0) throw std::invalid_argument("odd_double_factorial: need odd m >= -1");
  std::uint64_t acc = 1;
  for (std::int64_t k = 3; k <= m; k += 2) acc *= static_cast<std::uint64_t>(k);
  return acc;
}

}  // namespace mps
