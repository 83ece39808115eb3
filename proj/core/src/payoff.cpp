#include "altpd/payoff.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "altpd/chain.hpp"
#include "altpd/errors.hpp"

namespace altpd {

PayoffVector::PayoffVector(int memory, std::vector<double> values) : memory_(memory), values_(std::move(values)) {
  if (values_.size() != state_count(memory_)) throw std::invalid_argument("payoff vector length must be 4^N");
}

PayoffVector build_payoff_vector(const PayoffParams& params, int memory) {
  const auto totals = params.round_payoffs();
  std::vector<double> stacked(totals.begin(), totals.end());
  for (int n = 2; n <= memory; ++n) {
    std::vector<double> next;
    next.reserve(stacked.size() * 4);
    for (double offset : totals) {
      for (double v : stacked) next.push_back(v + offset);
    }
    stacked = std::move(next);
  }
  if (stacked.size() != state_count(memory)) throw std::invalid_argument("memory must be >= 1");
  for (double& v : stacked) v /= memory;
  return PayoffVector(memory, std::move(stacked));
}

std::vector<double> leader_winnings(const RawPayoffs& raw, int memory) {
  const StateIndex n = state_count(memory);
  std::vector<double> out(n);
  for (StateIndex h = 0; h < n; ++h) {
    const History hist = decode_history(h, memory);
    double total = 0.0;
    for (int round = 0; round < memory; ++round) {
      const Action own = hist[2 * round];
      const Action other = hist[2 * round + 1];
      total += (own == Action::C ? raw.a : raw.c) + (other == Action::C ? raw.b : raw.d);
    }
    out[h] = total / memory;
  }
  return out;
}

std::vector<double> follower_winnings(const RawPayoffs& raw, int memory) {
  const StateIndex n = state_count(memory);
  std::vector<double> out(n);
  for (StateIndex k = 0; k < n; ++k) {
    const History word = decode_history(k, memory);
    // Symbols alternate q, p, q, p, ..., p; q's own choices earn a or c,
    // every choice by p grants b or d.
    double total = 0.0;
    for (std::size_t i = 0; i < word.actions().size(); ++i) {
      const bool own = (i % 2 == 0);
      const bool cooperated = word[i] == Action::C;
      total += own ? (cooperated ? raw.a : raw.c) : (cooperated ? raw.b : raw.d);
    }
    out[k] = total / memory;
  }
  return out;
}

bool check_well_defined(const RawPayoffs& leader_side, const RawPayoffs& follower_side, int memory) {
  const auto fp = leader_winnings(leader_side, memory);
  const auto fq = follower_winnings(follower_side, memory);
  double worst = 0.0;
  for (std::size_t i = 0; i < fp.size(); ++i) worst = std::max(worst, std::abs(fp[i] - fq[i]));
  return worst < 1e-12;
}

bool check_well_defined(const PayoffParams& params, int memory, double a) {
  const RawPayoffs raw = raw_from_donation(params, a);
  return check_well_defined(raw, raw, memory);
}

double payoff_by_stationary(const Strategy& p, const Strategy& q, const PayoffParams& params) {
  const TransitionMatrix m = build_matrix_direct(p, q);
  const StationaryDistribution nu = stationary(m);
  const PayoffVector f = build_payoff_vector(params, p.memory());
  double total = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) total += nu[i] * f[i];
  return total;
}

double payoff_by_determinant(std::span<const double> p, std::span<const double> q, const PayoffParams& params,
                             int memory) {
  Eigen::MatrixXd shifted = transition_entries(p, q, memory);
  const Eigen::Index n = shifted.rows();
  shifted.diagonal().array() -= 1.0;

  const PayoffVector f = build_payoff_vector(params, memory);
  Eigen::MatrixXd denominator_matrix = shifted;
  denominator_matrix.col(n - 1).setOnes();
  const double denominator = denominator_matrix.partialPivLu().determinant();
  if (!(std::abs(denominator) >= 1e-14)) throw MathError("determinant formula singular");

  Eigen::MatrixXd numerator_matrix = shifted;
  numerator_matrix.col(n - 1) = Eigen::Map<const Eigen::VectorXd>(f.values().data(), n);
  return numerator_matrix.partialPivLu().determinant() / denominator;
}

double payoff_by_determinant(const Strategy& p, const Strategy& q, const PayoffParams& params) {
  if (p.memory() != q.memory()) throw std::invalid_argument("strategies must share the same memory");
  return payoff_by_determinant(p.probs(), q.probs(), params, p.memory());
}

}  // namespace altpd
