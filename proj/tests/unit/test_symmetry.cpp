#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "altpd/chain.hpp"
#include "altpd/payoff.hpp"
#include "altpd/random.hpp"
#include "altpd/symmetry.hpp"

using namespace altpd;

TEST_SUITE("symmetry") {
  TEST_CASE("memory-1 matrices") {
    const AdmissibleMatrix j4 = build_admissible(AdmissibleLabel::J4, 1);
    const Eigen::MatrixXd d = j4.dense();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(d(i, j) == (i + j == 3 ? 1.0 : 0.0));
    CHECK(build_admissible(AdmissibleLabel::J1, 2).dense() == Eigen::MatrixXd::Identity(16, 16));
    CHECK(build_admissible(AdmissibleLabel::J2, 1).perm == Permutation{1, 0, 3, 2});
    CHECK(build_admissible(AdmissibleLabel::J3, 1).perm == Permutation{2, 3, 0, 1});
  }

  TEST_CASE("involutions and composition") {
    for (int n = 1; n <= 3; ++n) {
      const auto j2 = build_admissible(AdmissibleLabel::J2, n);
      const auto j3 = build_admissible(AdmissibleLabel::J3, n);
      const auto j4 = build_admissible(AdmissibleLabel::J4, n);
      CHECK(is_involution(j2.perm));
      CHECK(is_involution(j3.perm));
      CHECK(is_involution(j4.perm));
      CHECK(compose(j2.perm, j3.perm) == j4.perm);
      // Reversal of the whole index.
      for (StateIndex i = 0; i < j4.perm.size(); ++i) CHECK(j4.perm[i] == j4.perm.size() - 1 - i);
    }
  }

  TEST_CASE("tensor order does not matter for these patterns") {
    for (AdmissibleLabel l : kAdmissibleLabels) {
      for (int n = 2; n <= 3; ++n)
        CHECK(build_admissible(l, n, TensorOrder::base_first).perm == build_admissible(l, n, TensorOrder::base_last).perm);
    }
  }

  TEST_CASE("conjugation action examples") {
    const Strategy p(1, {0.1, 0.2, 0.3, 0.4}), q(1, {0.5, 0.6, 0.7, 0.8});
    const auto [p1, q1] = conjugation_action(AdmissibleLabel::J1, p, q);
    CHECK(p1 == p);
    CHECK(q1 == q);
    const auto [p3, q3] = conjugation_action(AdmissibleLabel::J3, p, q);
    const double e[] = {0.7, 0.6, 0.9, 0.8};
    for (int i = 0; i < 4; ++i) CHECK(p3[i] == doctest::Approx(e[i]).epsilon(1e-15));
    const auto [a, b] = conjugation_action(AdmissibleLabel::J2, p, q);
    const auto [a2, b2] = conjugation_action(AdmissibleLabel::J2, a, b);
    for (int i = 0; i < 4; ++i) {
      CHECK(a2[i] == doctest::Approx(p[i]).epsilon(1e-15));
      CHECK(b2[i] == doctest::Approx(q[i]).epsilon(1e-15));
    }
  }

  TEST_CASE("conjugated matrix is the game of the transformed strategies") {
    Rng rng(61);
    for (int n = 1; n <= 3; ++n) {
      for (AdmissibleLabel l : kAdmissibleLabels) {
        const Strategy p = random_strategy(n, rng), q = random_strategy(n, rng);
        const AdmissibleMatrix j = build_admissible(l, n);
        const auto [pp, qq] = conjugation_action(l, p, q);
        const Eigen::MatrixXd lhs = j.conjugate(build_matrix_direct(p, q).entries());
        const Eigen::MatrixXd dense = j.dense();
        const Eigen::MatrixXd lhs2 = dense * build_matrix_direct(p, q).entries() * dense.transpose();
        CHECK((lhs - lhs2).cwiseAbs().maxCoeff() == 0.0);
        CHECK((lhs - build_matrix_direct(pp, qq).entries()).cwiseAbs().maxCoeff() < 1e-15);
      }
    }
  }

  TEST_CASE("verify_admissibility on random pairs") {
    Rng rng(62);
    for (int n = 1; n <= 2; ++n) {
      for (AdmissibleLabel l : kAdmissibleLabels) {
        for (int k = 0; k < 20; ++k) {
          const Strategy p = random_strategy(n, rng), q = random_strategy(n, rng);
          CHECK(verify_admissibility(l, n, p, q));
        }
      }
    }
  }

  TEST_CASE("recover_strategies") {
    Rng rng(63);
    const Strategy p = random_strategy(2, rng), q = random_strategy(2, rng);
    const auto rec = recover_strategies(build_matrix_direct(p, q).entries(), 2);
    REQUIRE(rec.has_value());
    for (std::size_t i = 0; i < 16; ++i) {
      CHECK(rec->first[i] == doctest::Approx(p[i]).epsilon(1e-12));
      CHECK(rec->second[i] == doctest::Approx(q[i]).epsilon(1e-12));
    }
    CHECK_FALSE(recover_strategies(Eigen::MatrixXd::Constant(16, 16, 1.0 / 16), 2).has_value());
  }

  TEST_CASE("other permutations break the game structure") {
    Rng rng(64);
    const Strategy p = random_strategy(1, rng), q = random_strategy(1, rng);
    Permutation perm{0, 1, 2, 3};
    int admissible = 0;
    do {
      if (verify_permutation(perm, p, q, PayoffParams(1.0, 0.3))) ++admissible;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(admissible == 4);
    CHECK_FALSE(verify_permutation({0, 2, 1, 3}, p, q, PayoffParams(1.0, 0.3)));
  }

  TEST_CASE("exhaustive search at memory 1") {
    const std::vector<Permutation> found = structure_preserving_permutations(10, 65);
    CHECK(found.size() == 4);
    for (AdmissibleLabel l : kAdmissibleLabels)
      CHECK(std::find(found.begin(), found.end(), build_admissible(l, 1).perm) != found.end());
    CHECK_FALSE(player_exchange_exists(10, 65));
  }

  TEST_CASE("payoff invariance") {
    Rng rng(66);
    const PayoffParams pp(1.0, 0.3);
    for (AdmissibleLabel l : kAdmissibleLabels) {
      const Strategy p = random_strategy(2, rng), q = random_strategy(2, rng);
      const AdmissibleMatrix j = build_admissible(l, 2);
      const TransitionMatrix m = build_matrix_direct(p, q);
      const StationaryDistribution nu = stationary(m);
      const PayoffVector fv = build_payoff_vector(pp, 2);
      const std::vector<double> f(fv.values().begin(), fv.values().end());
      const std::vector<double> jnu = j.apply(nu.values()), jf = j.apply(f);
      const double a = std::inner_product(f.begin(), f.end(), nu.values().begin(), 0.0);
      const double b = std::inner_product(jf.begin(), jf.end(), jnu.begin(), 0.0);
      CHECK(std::abs(a - b) < 1e-12);
      const StationaryDistribution nu2 = stationary(TransitionMatrix(2, j.conjugate(m.entries())));
      for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(nu2[i] - jnu[i]) < 1e-12);
    }
  }

  TEST_CASE("reversal identity") {
    const PayoffParams pp(1.0, 0.3);
    for (int n = 1; n <= 3; ++n) {
      const ReversalCheck r = reversal_identity_check(pp, n);
      CHECK(r.holds);
      CHECK(r.constant == doctest::Approx(0.7).epsilon(1e-15));
      CHECK(r.max_defect < 1e-15);
    }
    const std::vector<double> j4f = build_admissible(AdmissibleLabel::J4, 1).apply(build_payoff_vector(pp, 1).values());
    const double e[] = {0.0, 1.0, -0.3, 0.7};
    for (int i = 0; i < 4; ++i) CHECK(j4f[i] == doctest::Approx(e[i]).epsilon(1e-15));

    const PayoffVector f2 = build_payoff_vector(pp, 2);
    std::vector<double> broken(f2.values().begin(), f2.values().end());
    broken[3] += 0.05;
    CHECK_FALSE(reversal_identity_check(broken, pp, 2).holds);
  }
}
