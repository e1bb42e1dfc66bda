#include "tsat/rng.hpp"

namespace tsat {

std::uint64_t Rng::below(std::uint64_t bound) {
  __extension__ typedef unsigned __int128 u128;
  u128 m = u128(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = u128(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace tsat
