#include "altpd/random.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace altpd {

namespace {

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : engine_(seeded(seed, stream)) {}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("empty range");
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % n;
}

Strategy random_strategy(int memory, Rng& rng, double lo, double hi) {
  std::vector<double> probs(state_count(memory));
  for (double& v : probs) {
    do {
      v = rng.uniform(lo, hi);
    } while (v <= lo);
  }
  return Strategy(memory, std::move(probs));
}

}  // namespace altpd
