#pragma once

// Seeded randomness shared by the simulator, the CLI presets and the test
// suites. The generator is std::mt19937_64; doubles are built from the top
// 53 bits so streams are reproducible across standard libraries.

#include <cstdint>
#include <random>

#include "altpd/strategy.hpp"

namespace altpd {

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

// Entries uniform in (lo, hi).
Strategy random_strategy(int memory, Rng& rng, double lo = 0.0, double hi = 1.0);

}  // namespace altpd
