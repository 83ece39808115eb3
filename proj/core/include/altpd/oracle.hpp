#pragma once

// Monte Carlo play of the alternating game, used as an independent check of
// the stationary distribution and the payoff.

#include <cstdint>
#include <vector>

#include "altpd/strategy.hpp"

namespace altpd {

struct SimulationResult {
  double mean_payoff = 0.0;
  // Sample standard deviation of the per-round payoff over sqrt(rounds).
  // Rounds are correlated, so this understates the error of the mean.
  double std_error = 0.0;
  // Batch-means estimate (100 batches), which accounts for the correlation.
  double batch_std_error = 0.0;
  std::vector<double> state_frequencies;
  std::int64_t rounds = 0;
  std::int64_t burn_in = 0;
  std::uint64_t seed = 0;
  std::uint64_t replica = 0;
};

// The opening history is drawn uniformly from the 4^N states. Each round
// the leader plays C with probability p[h], the follower then plays C with
// probability q[follower_index(h, a)], and the round pays R, S, T or P
// according to (leader, follower). Statistics cover the `rounds` rounds
// after `burn_in` discarded ones; burn_in < 0 means rounds / 10.
SimulationResult simulate(const Strategy& p, const Strategy& q, const PayoffParams& params, std::int64_t rounds,
                          std::int64_t burn_in, std::uint64_t seed, std::uint64_t replica = 0);

std::vector<double> empirical_stationary(const SimulationResult& result);

}  // namespace altpd
