#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace heavytail::rng {

/// SplitMix64 finalizer. Bijective 64-bit mixer; the statistical core of the
/// counter-based generator below.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

/// Counter-based random stream: the value at index i is a pure function of
/// (key, i), so draws are random-access, bit-reproducible, and independent
/// streams can be handed to parallel workers with no shared state.
struct Stream {
  std::uint64_t key = 0;

  static Stream from(std::uint64_t seed, std::uint64_t stream_index) noexcept {
    return Stream{mix64(mix64(seed + kGolden) ^
                        (stream_index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL))};
  }

  /// Derive a decorrelated substream (used for mixture component draws and
  /// for salting independently-drawn comparison batches).
  Stream child(std::uint64_t tag) const noexcept {
    return Stream{mix64(key ^ (tag * kGolden + 0x632be59bd9b4e019ULL))};
  }

  std::uint64_t bits(std::uint64_t i) const noexcept { return mix64(key + (i + 1) * kGolden); }

  /// Uniform draw strictly inside (0,1): (m + 1/2) / 2^53 for m in [0, 2^53).
  double uniform01(std::uint64_t i) const noexcept {
    return (static_cast<double>(bits(i) >> 11) + 0.5) * 0x1.0p-53;
  }
};

/// Chunked parallel loop over [0, n). Work is split into fixed-size chunks so
/// results written by index are identical for any worker count. Worker count
/// is capped by the HEAVYTAIL_THREADS environment variable.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

std::size_t worker_count();

/// Fixed-shape pairwise summation; deterministic and more accurate than a
/// running sum for large n.
double pairwise_sum(std::span<const double> xs);

}  // namespace heavytail::rng
