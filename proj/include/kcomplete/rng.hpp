#pragma once

#include <cstdint>

namespace kcomplete {

// splitmix64: golden-ratio increments through a 64-bit finalizer. Chosen for
// cheap, well-tested splitting: a substream is itself a splitmix64 run whose
// start state is a finalized function of (seed, index), so sample i's draws
// depend on nothing but (seed, i).
inline constexpr std::uint64_t kSplitmixGamma = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t splitmix_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() { return splitmix_finalize(state_ += kSplitmixGamma); }

  // Strictly inside (0,1), so log() of it is always finite.
  double next_uniform01() { return ((next() >> 11) + 0.5) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// The generator for sample `index` of run `seed`.
inline SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(splitmix_finalize(seed + (index + 1) * kSplitmixGamma));
}

inline constexpr const char* kRngName = "splitmix64-per-index";

}  // namespace kcomplete
