#pragma once

#include <cstdint>
#include <random>

namespace scatterqual {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Substream seed for (master seed, n, trial). Trials can run in any order or
/// on any thread count and still draw the same numbers.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t s = master;
  std::uint64_t x = splitmix64(s) ^ (a * 0x9e3779b97f4a7c15ULL);
  std::uint64_t y = splitmix64(x) ^ (b * 0xc2b2ae3d27d4eb4fULL);
  return splitmix64(y);
}

/// mt19937_64 wrapper producing uniform doubles via the 53-bit mantissa trick,
/// so streams are identical across platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1).
  double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace scatterqual
