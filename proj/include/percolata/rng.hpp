#pragma once

#include <cstdint>
#include <span>

namespace percolata {

// Stateless counter-based randomness. Every per-edge uniform is a pure
// function of (seed, sample index, edge key), so a sweep over p reuses the
// same uniforms (monotone coupling) and nested windows sharing an edge see
// the same value (window monotonicity). Edge keys are derived from canonical
// edge coordinates, not from window-local edge indices.

/// splitmix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Folds a sequence of signed 32-bit words into a 64-bit key.
inline std::uint64_t fold_key(std::span<const std::int32_t> words) {
  std::uint64_t h = 0x2545f4914f6cdd1dULL;
  for (std::int32_t w : words) {
    h = mix64(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(w)));
  }
  return h;
}

/// Per-sample base key; combine with an edge key via edge_bits().
constexpr std::uint64_t sample_base(std::uint64_t seed, std::uint64_t sample) {
  return mix64(mix64(seed) ^ sample);
}

constexpr std::uint64_t edge_bits(std::uint64_t base, std::uint64_t edge_key) {
  return mix64(base ^ edge_key);
}

/// Uniform in [0, 1) with 53 random bits.
constexpr double bits_to_unit(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

/// Threshold form of `uniform < p`: integer compare, no FP per edge.
/// Bound lives in [0, 2^53] and is compared against the 53 bits
/// bits_to_unit() consumes. p * 2^53 is exact (power-of-two scaling), and
/// h < p*2^53 for integer h means h < ceil(p*2^53), so the two compare paths
/// agree bit-for-bit.
constexpr std::uint64_t open_threshold(double p) {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return 1ULL << 53;
  double scaled = p * 0x1.0p53;
  auto t = static_cast<std::uint64_t>(scaled);
  if (static_cast<double>(t) < scaled) ++t;
  return t;
}

constexpr bool edge_open(std::uint64_t base, std::uint64_t edge_key,
                         std::uint64_t threshold) {
  return (edge_bits(base, edge_key) >> 11) < threshold;
}

}  // namespace percolata
