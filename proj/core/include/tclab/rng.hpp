#pragma once

#include <cstdint>

namespace tclab {

// Deterministic RNG with platform-independent output. std::mt19937_64 has a
// pinned sequence, but the standard distributions do not, so uniform doubles
// are built directly from the raw bits.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // splitmix64
  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Derive an independent stream (used to give parallel workers stable seeds).
  Rng fork(std::uint64_t salt) {
    return Rng(next_u64() ^ (salt * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
  }

 private:
  std::uint64_t state_;
};

}  // namespace tclab
