#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "altpd/chain.hpp"
#include "altpd/errors.hpp"
#include "altpd/oracle.hpp"
#include "altpd/random.hpp"
#include "oracles.hpp"

using namespace altpd;

TEST_SUITE("chain") {
  TEST_CASE("full cooperation is absorbing in CC") {
    const Strategy one = Strategy::constant(1, 1.0);
    const TransitionMatrix m = build_matrix_direct(one, one);
    for (StateIndex i = 0; i < 4; ++i) {
      CHECK(m(i, 0) == 1.0);
      for (StateIndex j = 1; j < 4; ++j) CHECK(m(i, j) == 0.0);
    }
  }

  TEST_CASE("memory-1 entry from the table") {
    const Strategy p(1, {0.1, 0.2, 0.3, 0.4}), q(1, {0.5, 0.6, 0.7, 0.8});
    const TransitionMatrix m = build_matrix_direct(p, q);
    CHECK(m(1, 0) == doctest::Approx(0.14).epsilon(1e-15));
    const Eigen::Matrix4d table = testing::memory_one_table(p, q);
    CHECK((m.entries() - table).cwiseAbs().maxCoeff() < 1e-16);
  }

  TEST_CASE("uniform strategies give uniform rows") {
    const Strategy h = Strategy::constant(1, 0.5);
    const TransitionMatrix m = build_matrix_direct(h, h);
    CHECK((m.entries().array() == 0.25).all());
    const StationaryDistribution nu = stationary(m);
    for (std::size_t i = 0; i < 4; ++i) CHECK(nu[i] == doctest::Approx(0.25).epsilon(1e-14));
  }

  TEST_CASE("direct construction matches the word-based oracle") {
    Rng rng(21);
    for (int n = 1; n <= 3; ++n) {
      for (int k = 0; k < 20; ++k) {
        const Strategy p = random_strategy(n, rng), q = random_strategy(n, rng);
        const TransitionMatrix m = build_matrix_direct(p, q);
        CHECK((m.entries() - testing::matrix_from_words(p, q)).cwiseAbs().maxCoeff() < 1e-16);
        CHECK(m.row_sum_defect() < 1e-12);
      }
    }
  }

  TEST_CASE("recursive construction agrees with the direct one") {
    Rng rng(22);
    for (int n = 2; n <= 3; ++n) {
      for (int k = 0; k < 20; ++k) {
        const Strategy p = random_strategy(n, rng), q = random_strategy(n, rng);
        const double diff =
            (build_matrix_recursive(p, q).entries() - build_matrix_direct(p, q).entries()).cwiseAbs().maxCoeff();
        CHECK(diff <= 1e-15);
      }
    }
  }

  TEST_CASE("memory-2 structure") {
    const Strategy one = Strategy::constant(2, 1.0);
    const TransitionMatrix m = build_matrix_recursive(one, one);
    CHECK(m(0, 0) == 1.0);
    CHECK(m.entries().row(0).sum() == 1.0);

    Rng rng(23);
    const Strategy p = random_strategy(2, rng), q = random_strategy(2, rng);
    const TransitionMatrix d = build_matrix_direct(p, q);
    for (StateIndex i = 0; i < 16; ++i) CHECK((d.entries().row(i).array() != 0.0).count() == 4);
  }

  TEST_CASE("construction errors") {
    const Strategy p1 = Strategy::constant(1, 0.5), p2 = Strategy::constant(2, 0.5);
    CHECK_THROWS_AS(build_matrix_direct(p1, p2), std::invalid_argument);
    CHECK_THROWS_WITH_AS(build_matrix_recursive(p1, p1), "recursion base is memory 1", std::invalid_argument);
  }

  TEST_CASE("stationary distribution examples") {
    const Strategy one = Strategy::constant(1, 1.0);
    const StationaryDistribution nu = stationary(build_matrix_direct(one, one));
    CHECK(nu[0] == doctest::Approx(1.0).epsilon(1e-14));
    for (std::size_t i = 1; i < 4; ++i) CHECK(std::abs(nu[i]) < 1e-14);
  }

  TEST_CASE("reducible chain with two closed classes is rejected") {
    // Leader repeats its own last move, follower copies the leader: CC and DD both absorb.
    const Strategy p(1, {1, 1, 0, 0}), q(1, {1, 0, 1, 0});
    CHECK_THROWS_WITH_AS(stationary(build_matrix_direct(p, q)), "non-unique stationary distribution", MathError);
  }

  TEST_CASE("stationary distribution against power iteration") {
    Rng rng(24);
    for (int n = 1; n <= 3; ++n) {
      for (int k = 0; k < 5; ++k) {
        const Strategy p = random_strategy(n, rng, 0.05, 0.95), q = random_strategy(n, rng, 0.05, 0.95);
        const TransitionMatrix m = build_matrix_direct(p, q);
        const StationaryDistribution nu = stationary(m);
        const std::vector<double> ref = testing::power_stationary(m.entries());
        double sum = 0.0;
        for (std::size_t i = 0; i < nu.size(); ++i) {
          CHECK(std::abs(nu[i] - ref[i]) < 1e-10);
          sum += nu[i];
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(stationarity_residual(m, nu.values()) < 1e-13);
      }
    }
  }

  TEST_CASE("stationary distribution against simulated frequencies") {
    Rng rng(25);
    const Strategy p = random_strategy(1, rng, 0.1, 0.9), q = random_strategy(1, rng, 0.1, 0.9);
    const StationaryDistribution nu = stationary(build_matrix_direct(p, q));
    const std::int64_t rounds = 400000;
    const SimulationResult sim = simulate(p, q, PayoffParams(1.0, 0.3), rounds, -1, 99);
    const std::vector<double> freq = empirical_stationary(sim);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(freq[i] - nu[i]) < 5.0 / std::sqrt(double(rounds)));
  }

  TEST_CASE("perturb_strategies") {
    const auto [a, b] = perturb_strategies(Strategy::constant(1, 1.0), Strategy::constant(1, 0.0), 0.01);
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(a[i] == doctest::Approx(0.99).epsilon(1e-15));
      CHECK(b[i] == doctest::Approx(0.01).epsilon(1e-15));
    }
    const auto [c, d] = perturb_strategies(Strategy::constant(1, 0.5), Strategy::constant(1, 0.5), 0.2);
    CHECK(c == Strategy::constant(1, 0.5));
    CHECK(d == Strategy::constant(1, 0.5));
    CHECK_THROWS_AS(perturb_strategies(c, d, 0.5), std::invalid_argument);

    // A perturbed reducible pair has a unique stationary distribution.
    const Strategy p(1, {1, 1, 0, 0}), q(1, {1, 0, 1, 0});
    const auto [pp, qq] = perturb_strategies(p, q, 0.01);
    CHECK_NOTHROW(stationary(build_matrix_direct(pp, qq)));
  }
}
