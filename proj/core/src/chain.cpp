#include "altpd/chain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "altpd/errors.hpp"

namespace altpd {

namespace {

void require_same_memory(const Strategy& p, const Strategy& q) {
  if (p.memory() != q.memory()) throw std::invalid_argument("strategies must share the same memory");
}

double choose(double prob_cooperate, Action a) { return a == Action::C ? prob_cooperate : 1.0 - prob_cooperate; }

// One nonzero entry of the transition matrix in symbolic form: the factor
// p_leader_index (or 1 - p) times q_follower_index (or 1 - q).
struct TransitionTerm {
  StateIndex row;
  StateIndex col;
  StateIndex leader_index;
  Action leader;
  StateIndex follower_index;
  Action follower;
};

// Memory-1 table, row by row: the C and D columns of row CC use q_CC, q_CD;
// row CD uses q_DC, q_DD; rows DC and DD repeat that pattern. Row DD's
// second entry reads p_DD (the printed p_DC breaks the row pattern).
std::vector<TransitionTerm> memory_one_terms() {
  constexpr StateIndex follower_for[4][2] = {{0, 1}, {2, 3}, {0, 1}, {2, 3}};
  constexpr Action actions[2] = {Action::C, Action::D};
  std::vector<TransitionTerm> terms;
  terms.reserve(16);
  for (StateIndex row = 0; row < 4; ++row) {
    for (Action a : actions) {
      for (Action b : actions) {
        terms.push_back({row, 2 * bit(a) + bit(b), row, a, follower_for[row][bit(a)], b});
      }
    }
  }
  return terms;
}

std::vector<TransitionTerm> recursive_terms(int memory) {
  std::vector<TransitionTerm> terms = memory_one_terms();
  for (int n = 2; n <= memory; ++n) {
    const StateIndex prev_size = state_count(n - 1);    // 4^(n-1)
    const StateIndex quarter = prev_size / 4;           // 4^(n-2)
    const int prev_bits = 2 * (n - 1);
    std::vector<TransitionTerm> next;
    next.reserve(terms.size() * 4);
    for (StateIndex prefix = 0; prefix < 4; ++prefix) {
      const StateIndex second_symbol = prefix & 1u;
      for (const TransitionTerm& t : terms) {
        // Row t.row of M_{n-1} lies in quarter M_j, j = t.row / quarter; that
        // quarter sits in column block j of the new matrix.
        const StateIndex block = t.row / quarter;
        const StateIndex first_symbol = t.leader_index >> (prev_bits - 1);
        TransitionTerm u = t;
        u.row = prefix * prev_size + t.row;
        u.col = block * prev_size + t.col;
        u.leader_index = prefix * prev_size + t.leader_index;
        u.follower_index = ((second_symbol << 1) | first_symbol) * prev_size + t.follower_index;
        next.push_back(u);
      }
    }
    terms = std::move(next);
  }
  return terms;
}

}  // namespace

TransitionMatrix::TransitionMatrix(int memory, Eigen::MatrixXd entries)
    : memory_(memory), entries_(std::move(entries)) {
  const auto n = static_cast<Eigen::Index>(state_count(memory_));
  if (entries_.rows() != n || entries_.cols() != n) {
    throw std::invalid_argument("transition matrix must be 4^N x 4^N");
  }
}

double TransitionMatrix::row_sum_defect() const {
  return (entries_.rowwise().sum().array() - 1.0).abs().maxCoeff();
}

Eigen::MatrixXd transition_entries(std::span<const double> p, std::span<const double> q, int memory) {
  const StateIndex n = state_count(memory);
  if (p.size() != n || q.size() != n) throw std::invalid_argument("strategy length must be 4^N");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  constexpr Action actions[2] = {Action::C, Action::D};
  for (StateIndex h = 0; h < n; ++h) {
    for (Action a : actions) {
      const double leader = choose(p[h], a);
      const StateIndex k = follower_index(h, a, memory);
      for (Action b : actions) {
        m(static_cast<Eigen::Index>(h), static_cast<Eigen::Index>(successor(h, a, b, memory))) =
            leader * choose(q[k], b);
      }
    }
  }
  return m;
}

TransitionMatrix build_matrix_direct(const Strategy& p, const Strategy& q) {
  require_same_memory(p, q);
  return TransitionMatrix(p.memory(), transition_entries(p.probs(), q.probs(), p.memory()));
}

TransitionMatrix build_matrix_recursive(const Strategy& p, const Strategy& q) {
  require_same_memory(p, q);
  if (p.memory() < 2) throw std::invalid_argument("recursion base is memory 1");
  const auto n = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const TransitionTerm& t : recursive_terms(p.memory())) {
    m(static_cast<Eigen::Index>(t.row), static_cast<Eigen::Index>(t.col)) +=
        choose(p[t.leader_index], t.leader) * choose(q[t.follower_index], t.follower);
  }
  return TransitionMatrix(p.memory(), std::move(m));
}

StationaryDistribution stationary(const TransitionMatrix& m) {
  const Eigen::Index n = m.entries().rows();
  const Eigen::MatrixXd kernel_system = m.entries().transpose() - Eigen::MatrixXd::Identity(n, n);

  Eigen::MatrixXd a = kernel_system;
  a.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;

  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  lu.setThreshold(1e-12);
  Eigen::VectorXd nu;
  if (lu.isInvertible()) {
    nu = lu.solve(rhs);
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(kernel_system, Eigen::ComputeFullV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    const auto null_dim = std::count_if(sigma.data(), sigma.data() + sigma.size(), [](double s) { return s < 1e-10; });
    if (null_dim != 1) throw MathError("non-unique stationary distribution");
    nu = svd.matrixV().col(n - 1);
    nu /= nu.sum();
  }

  std::vector<double> values(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = std::max(nu(i), 0.0);
  double total = 0.0;
  for (double v : values) total += v;
  for (double& v : values) v /= total;
  return StationaryDistribution(std::move(values));
}

double stationarity_residual(const TransitionMatrix& m, std::span<const double> nu) {
  const Eigen::Map<const Eigen::VectorXd> v(nu.data(), static_cast<Eigen::Index>(nu.size()));
  return (m.entries().transpose() * v - v).cwiseAbs().maxCoeff();
}

std::pair<Strategy, Strategy> perturb_strategies(const Strategy& p, const Strategy& q, double eps) {
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 0.5)");
  auto squeeze = [eps](const Strategy& s) {
    std::vector<double> out(s.probs().begin(), s.probs().end());
    for (double& v : out) v += eps * (1.0 - 2.0 * v);  // = eps + (1 - 2 eps) v, exact at 1/2
    return Strategy(s.memory(), std::move(out));
  };
  return {squeeze(p), squeeze(q)};
}

}  // namespace altpd
