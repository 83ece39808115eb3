#include "altpd/oracle.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "altpd/random.hpp"

namespace altpd {

namespace {

struct Tally {
  std::array<std::int64_t, 4> outcomes{};
  std::int64_t total = 0;

  double mean(const std::array<double, 4>& v) const {
    double m = 0.0;
    for (int i = 0; i < 4; ++i) m += (static_cast<double>(outcomes[i]) / total) * v[i];
    return m;
  }
  double variance(const std::array<double, 4>& v, double mu) const {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) s += (static_cast<double>(outcomes[i]) / total) * (v[i] - mu) * (v[i] - mu);
    return s;
  }
};

}  // namespace

SimulationResult simulate(const Strategy& p, const Strategy& q, const PayoffParams& params, std::int64_t rounds,
                          std::int64_t burn_in, std::uint64_t seed, std::uint64_t replica) {
  if (p.memory() != q.memory()) throw std::invalid_argument("strategies must share the same memory");
  if (rounds < 1) throw std::invalid_argument("rounds must be >= 1");
  if (burn_in < 0) burn_in = rounds / 10;

  const StateIndex n = p.size();
  const StateIndex mask = n - 1;
  const std::array<double, 4> totals = params.round_payoffs();
  const std::span<const double> pp = p.probs();
  const std::span<const double> qq = q.probs();

  Rng rng(seed, replica);
  StateIndex h = rng.below(n);

  auto play = [&]() {
    const StateIndex a = rng.uniform() < pp[h] ? 0u : 1u;
    const StateIndex k = ((h << 1) & mask) | a;
    const StateIndex b = rng.uniform() < qq[k] ? 0u : 1u;
    const StateIndex pair = (a << 1) | b;
    h = ((h << 2) & mask) | pair;
    return pair;
  };

  for (std::int64_t i = 0; i < burn_in; ++i) play();

  constexpr std::int64_t kBatches = 100;
  const bool batched = rounds >= 2 * kBatches;
  const std::int64_t batch_size = batched ? rounds / kBatches : rounds;
  std::vector<double> batch_means;
  batch_means.reserve(kBatches);

  Tally all, batch;
  std::vector<std::int64_t> visits(n, 0);
  for (std::int64_t i = 0; i < rounds; ++i) {
    const StateIndex pair = play();
    ++all.outcomes[pair];
    ++visits[h];
    if (batched) {
      ++batch.outcomes[pair];
      if (++batch.total == batch_size) {
        if (static_cast<std::int64_t>(batch_means.size()) < kBatches) batch_means.push_back(batch.mean(totals));
        batch = Tally{};
      }
    }
  }
  all.total = rounds;

  SimulationResult out;
  out.rounds = rounds;
  out.burn_in = burn_in;
  out.seed = seed;
  out.replica = replica;
  out.mean_payoff = all.mean(totals);
  const double sample_var = rounds > 1 ? all.variance(totals, out.mean_payoff) * rounds / (rounds - 1) : 0.0;
  out.std_error = std::sqrt(sample_var / rounds);
  if (batched && batch_means.size() > 1) {
    double m = 0.0;
    for (double v : batch_means) m += v;
    m /= batch_means.size();
    double s = 0.0;
    for (double v : batch_means) s += (v - m) * (v - m);
    s /= (batch_means.size() - 1);
    out.batch_std_error = std::sqrt(s / batch_means.size());
  } else {
    out.batch_std_error = out.std_error;
  }
  out.state_frequencies.resize(n);
  for (StateIndex i = 0; i < n; ++i) out.state_frequencies[i] = static_cast<double>(visits[i]) / rounds;
  return out;
}

std::vector<double> empirical_stationary(const SimulationResult& result) { return result.state_frequencies; }

}  // namespace altpd
