#include "altpd/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "altpd/chain.hpp"
#include "altpd/errors.hpp"
#include "altpd/payoff.hpp"
#include "altpd/random.hpp"

namespace altpd {

std::string_view to_string(AdmissibleLabel label) noexcept {
  switch (label) {
    case AdmissibleLabel::J1:
      return "J1";
    case AdmissibleLabel::J2:
      return "J2";
    case AdmissibleLabel::J3:
      return "J3";
    case AdmissibleLabel::J4:
      return "J4";
  }
  return "?";
}

namespace {

// Memory-1 patterns. Pair index = 2 * leader bit + follower bit.
Permutation base_pattern(AdmissibleLabel label) {
  switch (label) {
    case AdmissibleLabel::J1:
      return {0, 1, 2, 3};
    case AdmissibleLabel::J2:
      return {1, 0, 3, 2};
    case AdmissibleLabel::J3:
      return {2, 3, 0, 1};
    case AdmissibleLabel::J4:
      return {3, 2, 1, 0};
  }
  throw std::invalid_argument("unknown admissible label");
}

// Kronecker product of permutation matrices: (A (x) B) has index map
// i = (i1, i2) -> (a[i1], b[i2]).
Permutation kron(const Permutation& a, const Permutation& b) {
  Permutation out(a.size() * b.size());
  for (std::size_t i1 = 0; i1 < a.size(); ++i1)
    for (std::size_t i2 = 0; i2 < b.size(); ++i2) out[i1 * b.size() + i2] = a[i1] * b.size() + b[i2];
  return out;
}

// Mask with a 1 at every even (from_leader = true) or odd symbol position of
// a 2N-symbol word; position 0 is the most significant bit.
StateIndex position_mask(int memory, bool even_positions) {
  StateIndex mask = 0;
  const int length = 2 * memory;
  for (int pos = even_positions ? 0 : 1; pos < length; pos += 2) mask |= StateIndex{1} << (length - 1 - pos);
  return mask;
}

bool relabels_follower(AdmissibleLabel l) { return l == AdmissibleLabel::J2 || l == AdmissibleLabel::J4; }
bool relabels_leader(AdmissibleLabel l) { return l == AdmissibleLabel::J3 || l == AdmissibleLabel::J4; }

double stationary_inner(const Eigen::MatrixXd& m, int memory, std::span<const double> f,
                        std::vector<double>* nu_out) {
  const StationaryDistribution nu = stationary(TransitionMatrix(memory, m));
  double total = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) total += nu[i] * f[i];
  if (nu_out) nu_out->assign(nu.values().begin(), nu.values().end());
  return total;
}

}  // namespace

std::vector<double> AdmissibleMatrix::apply(std::span<const double> v) const {
  if (v.size() != perm.size()) throw std::invalid_argument("vector length does not match permutation");
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[perm[i]];
  return out;
}

Eigen::MatrixXd AdmissibleMatrix::conjugate(const Eigen::MatrixXd& m) const {
  const auto n = static_cast<Eigen::Index>(perm.size());
  if (m.rows() != n || m.cols() != n) throw std::invalid_argument("matrix size does not match permutation");
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m(perm[i], perm[j]);
  return out;
}

Eigen::MatrixXd AdmissibleMatrix::dense() const {
  const auto n = static_cast<Eigen::Index>(perm.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) out(i, perm[i]) = 1.0;
  return out;
}

AdmissibleMatrix build_admissible(AdmissibleLabel label, int memory, TensorOrder order) {
  state_count(memory);  // validates memory
  const Permutation base = base_pattern(label);
  Permutation perm = base;
  for (int n = 2; n <= memory; ++n) perm = order == TensorOrder::base_first ? kron(base, perm) : kron(perm, base);
  return {label, memory, std::move(perm)};
}

Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("permutation sizes differ");
  // (A B v)_i = (B v)_{a[i]} = v_{b[a[i]]}
  Permutation out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = b[a[i]];
  return out;
}

bool is_involution(const Permutation& perm) {
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (perm[perm[i]] != i) return false;
  }
  return true;
}

std::pair<Strategy, Strategy> conjugation_action(AdmissibleLabel label, const Strategy& p, const Strategy& q) {
  if (p.memory() != q.memory()) throw std::invalid_argument("strategies must share the same memory");
  const int memory = p.memory();
  const StateIndex n = p.size();
  // Leader histories: even positions are leader symbols, odd are follower
  // symbols. Follower words: even positions are follower symbols.
  const StateIndex even = position_mask(memory, true);
  const StateIndex odd = position_mask(memory, false);
  const bool flip_q = relabels_follower(label);
  const bool flip_p = relabels_leader(label);

  std::vector<double> pp(n), qq(n);
  for (StateIndex h = 0; h < n; ++h) {
    StateIndex src = h;
    if (flip_q) src ^= odd;
    if (flip_p) src ^= even;
    pp[h] = flip_p ? 1.0 - p[src] : p[src];
  }
  for (StateIndex k = 0; k < n; ++k) {
    StateIndex src = k;
    if (flip_q) src ^= even;
    if (flip_p) src ^= odd;
    qq[k] = flip_q ? 1.0 - q[src] : q[src];
  }
  return {Strategy(memory, std::move(pp)), Strategy(memory, std::move(qq))};
}

std::optional<std::pair<Strategy, Strategy>> recover_strategies(const Eigen::MatrixXd& m, int memory, double tol) {
  const StateIndex n = state_count(memory);
  if (m.rows() != static_cast<Eigen::Index>(n) || m.cols() != static_cast<Eigen::Index>(n)) return std::nullopt;
  constexpr Action actions[2] = {Action::C, Action::D};

  std::vector<double> p(n), q(n, 0.5);
  std::vector<double> weight(n, 0.0);  // leader probability behind the current q estimate
  for (StateIndex h = 0; h < n; ++h) {
    double leader_prob[2];
    for (Action a : actions) {
      const double cc = m(h, successor(h, a, Action::C, memory));
      const double cd = m(h, successor(h, a, Action::D, memory));
      leader_prob[bit(a)] = cc + cd;
      const StateIndex k = follower_index(h, a, memory);
      if (cc + cd > weight[k]) {
        weight[k] = cc + cd;
        q[k] = cc / (cc + cd);
      }
    }
    p[h] = leader_prob[0];
  }
  for (double& v : p) {
    if (v < -tol || v > 1 + tol) return std::nullopt;
    v = std::clamp(v, 0.0, 1.0);
  }
  for (double& v : q) {
    if (!(v >= -tol && v <= 1 + tol)) return std::nullopt;
    v = std::clamp(v, 0.0, 1.0);
  }
  const Eigen::MatrixXd rebuilt = transition_entries(p, q, memory);
  if (!((rebuilt - m).cwiseAbs().maxCoeff() <= tol)) return std::nullopt;
  return std::make_pair(Strategy(memory, std::move(p)), Strategy(memory, std::move(q)));
}

bool verify_permutation(const Permutation& perm, const Strategy& p, const Strategy& q, const PayoffParams& params) {
  if (p.memory() != q.memory() || perm.size() != p.size()) return false;
  const int memory = p.memory();
  const AdmissibleMatrix j{AdmissibleLabel::J1, memory, perm};
  const Eigen::MatrixXd m = build_matrix_direct(p, q).entries();
  const Eigen::MatrixXd conj = j.conjugate(m);
  if (!recover_strategies(conj, memory)) return false;

  try {
    const PayoffVector f = build_payoff_vector(params, memory);
    std::vector<double> nu, nu_conj;
    const double original = stationary_inner(m, memory, f.values(), &nu);
    const std::vector<double> jf = j.apply(f.values());
    const double transformed = stationary_inner(conj, memory, jf, &nu_conj);
    const std::vector<double> jnu = j.apply(nu);
    double worst = 0.0;
    for (std::size_t i = 0; i < jnu.size(); ++i) worst = std::max(worst, std::abs(jnu[i] - nu_conj[i]));
    return worst < 1e-10 && std::abs(original - transformed) < 1e-10;
  } catch (const MathError&) {
    return false;
  }
}

bool verify_admissibility(AdmissibleLabel label, int memory, const Strategy& p, const Strategy& q,
                          const PayoffParams& params) {
  if (p.memory() != memory || q.memory() != memory) return false;
  const AdmissibleMatrix j = build_admissible(label, memory);
  if (!verify_permutation(j.perm, p, q, params)) return false;
  const auto recovered = recover_strategies(j.conjugate(build_matrix_direct(p, q).entries()), memory);
  const auto [pp, qq] = conjugation_action(label, p, q);
  // Follower entries behind a zero leader probability are not identifiable;
  // compare matrices rather than raw vectors.
  const Eigen::MatrixXd a = transition_entries(recovered->first.probs(), recovered->second.probs(), memory);
  const Eigen::MatrixXd b = transition_entries(pp.probs(), qq.probs(), memory);
  double worst_p = 0.0;
  for (std::size_t i = 0; i < pp.size(); ++i) worst_p = std::max(worst_p, std::abs(pp[i] - recovered->first[i]));
  return worst_p < 1e-12 && (a - b).cwiseAbs().maxCoeff() < 1e-12;
}

ReversalCheck reversal_identity_check(std::span<const double> f, const PayoffParams& params, int memory) {
  if (f.size() != state_count(memory)) throw std::invalid_argument("payoff vector length must be 4^N");
  const AdmissibleMatrix j4 = build_admissible(AdmissibleLabel::J4, memory);
  const std::vector<double> jf = j4.apply(f);
  const double constant = params.reward() + params.punishment();
  double worst = 0.0, scale = std::abs(constant);
  for (std::size_t i = 0; i < f.size(); ++i) {
    worst = std::max(worst, std::abs(-f[i] + constant - jf[i]));
    scale = std::max(scale, std::abs(f[i]));
  }
  const double tol = 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, scale);
  return {worst <= tol, constant, worst};
}

ReversalCheck reversal_identity_check(const PayoffParams& params, int memory) {
  const PayoffVector f = build_payoff_vector(params, memory);
  return reversal_identity_check(f.values(), params, memory);
}

std::vector<Permutation> structure_preserving_permutations(int samples, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<Strategy, Strategy>> pairs;
  for (int s = 0; s < samples; ++s) {
    Strategy p = random_strategy(1, rng);
    Strategy q = random_strategy(1, rng);
    pairs.emplace_back(std::move(p), std::move(q));
  }
  std::vector<Permutation> out;
  Permutation perm{0, 1, 2, 3};
  do {
    const AdmissibleMatrix j{AdmissibleLabel::J1, 1, perm};
    const bool ok = std::all_of(pairs.begin(), pairs.end(), [&](const auto& pq) {
      return recover_strategies(j.conjugate(build_matrix_direct(pq.first, pq.second).entries()), 1).has_value();
    });
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

bool player_exchange_exists(int samples, std::uint64_t seed) {
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  for (const Permutation& perm : structure_preserving_permutations(samples, seed)) {
    const AdmissibleMatrix j{AdmissibleLabel::J1, 1, perm};
    for (int s = 0; s < samples; ++s) {
      const Strategy p = random_strategy(1, rng);
      const Strategy q1 = random_strategy(1, rng);
      const Strategy q2 = random_strategy(1, rng);
      const auto r1 = recover_strategies(j.conjugate(build_matrix_direct(p, q1).entries()), 1);
      const auto r2 = recover_strategies(j.conjugate(build_matrix_direct(p, q2).entries()), 1);
      for (std::size_t i = 0; i < 4; ++i) {
        if (std::abs(r1->first[i] - r2->first[i]) > 1e-12) return true;
      }
    }
  }
  return false;
}

}  // namespace altpd
