#pragma once

#include <cstdint>
#include <random>

namespace tsat {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// mt19937_64 with a splitmix64-derived seed. The bounded draw is implemented
// here rather than through std::uniform_int_distribution, whose output is
// implementation-defined, so streams agree across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t s = seed;
    engine_.seed(splitmix64(s));
  }

  // Independent stream number k derived from the same root seed.
  Rng split(std::uint64_t k) const {
    std::uint64_t s = seed_ ^ (0xD1B54A32D192ED03ULL * (k + 1));
    return Rng(splitmix64(s));
  }

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound), bound > 0 (Lemire's method with rejection).
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace tsat
