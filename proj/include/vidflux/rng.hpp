#pragma once

#include <cstdint>

namespace vidflux {

// Counter-based PRNG built on the SplitMix64 finalizer. Every draw is a
// pure function of (seed, stream, counters), so independent streams can be
// split per frame/object without sequential state, and extending a run
// never perturbs earlier draws.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t split_u64(std::uint64_t seed, std::uint64_t stream,
                               std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t h = mix64(seed ^ 0xd1b54a32d192ed03ull);
  h = mix64(h ^ stream);
  h = mix64(h ^ a);
  h = mix64(h ^ b);
  return h;
}

// Uniform double in [0, 1), 53 mantissa bits.
inline double split_uniform(std::uint64_t seed, std::uint64_t stream,
                            std::uint64_t a, std::uint64_t b = 0) {
  return static_cast<double>(split_u64(seed, stream, a, b) >> 11) * 0x1.0p-53;
}

}  // namespace vidflux
