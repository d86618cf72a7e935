#pragma once

#include <cstdint>
#include <vector>

namespace fqdirs {

// Counter-based generator (SplitMix64 over a keyed counter). Streams keyed
// by (seed, stream) are independent and stateless to set up, so parallel
// workers derive their randomness from the candidate index alone and share
// nothing.
struct CounterRng {
  uint64_t state;

  CounterRng(uint64_t seed, uint64_t stream)
      : state(seed ^ (0x9E3779B97F4A7C15ULL * (stream + 0x632BE59BD9B4E019ULL))) {}

  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Unbiased value in [0, bound) by rejection.
  uint64_t below(uint64_t bound) {
    uint64_t lim = UINT64_MAX - UINT64_MAX % bound;
    uint64_t v;
    do {
      v = next();
    } while (v >= lim);
    return v % bound;
  }
};

// Uniform n-subset of {0, ..., universe-1} by Floyd's algorithm; sorted.
std::vector<uint64_t> random_subset_indices(CounterRng& rng, uint64_t universe, uint64_t n);

}  // namespace fqdirs
