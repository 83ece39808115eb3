#pragma once

// Markov chain of the alternating game over history states.
//
// Entry (i, j) of the transition matrix is the probability of moving from
// history i to history j, so rows sum to one and the stationary
// distribution is a left eigenvector: nu^T M = nu^T.

#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "altpd/strategy.hpp"

namespace altpd {

class TransitionMatrix {
 public:
  TransitionMatrix(int memory, Eigen::MatrixXd entries);

  int memory() const noexcept { return memory_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  double operator()(StateIndex from, StateIndex to) const { return entries_(from, to); }

  // Largest |row sum - 1|.
  double row_sum_defect() const;

 private:
  int memory_;
  Eigen::MatrixXd entries_;
};

// Shift-and-append construction: from h = (i1 ... i2N) the chain moves to
// (i3 ... i2N a b) with probability [a=C ? p_h : 1-p_h] * [b=C ? q_k : 1-q_k],
// k = follower_index(h, a).
TransitionMatrix build_matrix_direct(const Strategy& p, const Strategy& q);

// Block recursion: M_N is assembled from the row quarters of M_{N-1},
// prefixing leader indices with the new oldest pair and follower indices
// with its second symbol. Requires N >= 2.
TransitionMatrix build_matrix_recursive(const Strategy& p, const Strategy& q);

// Same entries as build_matrix_direct but without range checks on p and q;
// evaluates the polynomial entries anywhere in R^(4^N). Used to extend the
// payoff to a rational function for differentiation.
Eigen::MatrixXd transition_entries(std::span<const double> p, std::span<const double> q, int memory);

class StationaryDistribution {
 public:
  explicit StationaryDistribution(std::vector<double> nu) : nu_(std::move(nu)) {}

  std::span<const double> values() const noexcept { return nu_; }
  std::size_t size() const noexcept { return nu_.size(); }
  double operator[](std::size_t i) const { return nu_[i]; }

 private:
  std::vector<double> nu_;
};

// Solves (M^T - I) nu = 0, sum(nu) = 1 by replacing one equation with the
// normalisation. If that system is singular, the kernel of M^T - I is
// inspected by SVD: a one-dimensional kernel (singular values below 1e-10)
// yields its normalised element, anything else throws MathError
// "non-unique stationary distribution".
StationaryDistribution stationary(const TransitionMatrix& m);

// max_j |(nu^T M)_j - nu_j|
double stationarity_residual(const TransitionMatrix& m, std::span<const double> nu);

// Maps every entry v to eps + (1 - 2 eps) v; eps in (0, 0.5).
std::pair<Strategy, Strategy> perturb_strategies(const Strategy& p, const Strategy& q, double eps);

}  // namespace altpd
