#include "rng.hpp"

#include <algorithm>

namespace fqdirs {

std::vector<uint64_t> random_subset_indices(CounterRng& rng, uint64_t universe, uint64_t n) {
  std::vector<uint64_t> out;
  out.reserve(n);
  // Floyd: each round either keeps the fresh draw or promotes the new top
  // value, so every n-subset is equally likely.
  for (uint64_t j = universe - n; j < universe; ++j) {
    uint64_t t = rng.below(j + 1);
    if (std::find(out.begin(), out.end(), t) != out.end()) {
      out.push_back(j);
    } else {
      out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fqdirs
