#pragma once

#include <span>
#include <vector>

#include "altpd/strategy.hpp"

namespace altpd {

// Average per-round winnings over the remembered window, one entry per
// history state. Built by stacking: f~_1 = (R,S,T,P) and f~_N is four copies
// of f~_{N-1} offset by R, S, T, P; f_N = f~_N / N.
class PayoffVector {
 public:
  PayoffVector(int memory, std::vector<double> values);

  int memory() const noexcept { return memory_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  int memory_;
  std::vector<double> values_;
};

PayoffVector build_payoff_vector(const PayoffParams& params, int memory);

// Winnings of the leader for each of its histories (pairs of own action,
// opponent action), averaged over the N rounds.
std::vector<double> leader_winnings(const RawPayoffs& raw, int memory);

// Winnings of the follower for each of its index words (own oldest action,
// ..., leader's current action), averaged over the N rounds.
std::vector<double> follower_winnings(const RawPayoffs& raw, int memory);

// True when the two players' per-history winnings coincide (max abs
// difference < 1e-12). The two-argument form lets each side use its own
// per-choice payoffs.
bool check_well_defined(const RawPayoffs& leader_side, const RawPayoffs& follower_side, int memory);
bool check_well_defined(const PayoffParams& params, int memory, double a = 0.0);

// <nu(p, q), f_N>
double payoff_by_stationary(const Strategy& p, const Strategy& q, const PayoffParams& params);

// det(M - I, last column <- f_N) / det(M - I, last column <- 1). Throws
// MathError "determinant formula singular" when |denominator| < 1e-14.
double payoff_by_determinant(const Strategy& p, const Strategy& q, const PayoffParams& params);

// The same determinant ratio for arbitrary real vectors of length 4^memory.
// This is the rational function whose partial derivatives define the
// adaptive dynamics; no [0, 1] check is applied.
double payoff_by_determinant(std::span<const double> p, std::span<const double> q, const PayoffParams& params,
                             int memory);

}  // namespace altpd
