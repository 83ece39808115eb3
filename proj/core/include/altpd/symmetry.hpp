#pragma once

// Admissible permutation matrices: orthogonal permutations J with
// J M(p, q) J^T = M(p', q') for every game matrix M(p, q). At memory 1 they
// are the identity (J1), the swap of the follower's symbol in every pair
// (J2), the swap of the leader's symbol (J3) and the full reversal (J4).
//
// A matrix is stored as an index map: (J v)_i = v[perm[i]], hence
// (J M J^T)_{ij} = M_{perm[i], perm[j]}.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "altpd/strategy.hpp"

namespace altpd {

enum class AdmissibleLabel { J1, J2, J3, J4 };

inline constexpr AdmissibleLabel kAdmissibleLabels[4] = {AdmissibleLabel::J1, AdmissibleLabel::J2,
                                                         AdmissibleLabel::J3, AdmissibleLabel::J4};

std::string_view to_string(AdmissibleLabel label) noexcept;

using Permutation = std::vector<StateIndex>;

struct AdmissibleMatrix {
  AdmissibleLabel label;
  int memory;
  Permutation perm;

  std::vector<double> apply(std::span<const double> v) const;
  Eigen::MatrixXd conjugate(const Eigen::MatrixXd& m) const;  // J M J^T
  Eigen::MatrixXd dense() const;
};

// Order of the tensor factors in the recursive construction.
enum class TensorOrder {
  base_first,  // J_N = J_1 (x) J_{N-1}: each 1 of the base pattern replaced by J_{N-1}
  base_last,   // J_N = J_{N-1} (x) J_1
};

AdmissibleMatrix build_admissible(AdmissibleLabel label, int memory, TensorOrder order = TensorOrder::base_first);

// Permutation of A * B (apply B first, then A).
Permutation compose(const Permutation& a, const Permutation& b);

bool is_involution(const Permutation& perm);

// (p', q') with J M(p, q) J^T = M(p', q'). For J2 the follower's choices are
// relabelled (q' = 1 - q at the index with the follower's symbols flipped,
// p' = p at the index with the follower's symbols flipped); J3 does the same
// for the leader; J4 is both; J1 is the identity.
std::pair<Strategy, Strategy> conjugation_action(AdmissibleLabel label, const Strategy& p, const Strategy& q);

// Reads (p, q) back from a matrix of the alternating game. Returns nullopt
// if the matrix is not of that form (zero pattern, row structure or the
// rebuilt matrix differ by more than tol).
std::optional<std::pair<Strategy, Strategy>> recover_strategies(const Eigen::MatrixXd& m, int memory,
                                                                 double tol = 1e-12);

// (a) J M J^T is a game matrix, recovered entry-wise; (b) the stationary
// distribution of J M J^T is J nu and <J nu, J f> = <nu, f> within 1e-10.
bool verify_permutation(const Permutation& perm, const Strategy& p, const Strategy& q, const PayoffParams& params);

// verify_permutation for a labelled matrix, plus agreement of the recovered
// strategies with conjugation_action.
bool verify_admissibility(AdmissibleLabel label, int memory, const Strategy& p, const Strategy& q,
                          const PayoffParams& params = PayoffParams(1.0, 0.3));

struct ReversalCheck {
  bool holds;
  double constant;    // R + P
  double max_defect;  // max_i |-f_i + (R + P) - (J4 f)_i|
};

// -f_N + (R + P) 1 = J4_N f_N. The identity is checked to a few ulps of the
// largest magnitude involved (it is exact in real arithmetic).
ReversalCheck reversal_identity_check(const PayoffParams& params, int memory);
ReversalCheck reversal_identity_check(std::span<const double> f, const PayoffParams& params, int memory);

// Exhaustive search over all 24 permutations at memory 1: those that keep
// every sampled game matrix a game matrix.
std::vector<Permutation> structure_preserving_permutations(int samples, std::uint64_t seed);

// True if some structure-preserving permutation at memory 1 turns the
// leader's new strategy into a function of the old follower strategy
// (a player exchange).
bool player_exchange_exists(int samples, std::uint64_t seed);

}  // namespace altpd
