#pragma once

#include <cstdint>
#include <random>

namespace wavehull {

// mt19937_64 with explicit output mapping. The engine's sequence is pinned by
// the standard, and we avoid std distributions because their draws are
// implementation-defined; outputs stay identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  // [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // [0, n)
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace wavehull
