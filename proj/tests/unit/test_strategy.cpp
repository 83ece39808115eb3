#include <doctest.h>

#include <stdexcept>

#include "altpd/random.hpp"
#include "altpd/strategy.hpp"

using namespace altpd;

TEST_SUITE("strategy") {
  TEST_CASE("encode_history examples") {
    CHECK(encode_history(History(1, "CC")) == 0);
    CHECK(encode_history(History(1, "DD")) == 3);
    CHECK(encode_history(History(2, "CDDC")) == 6);
    CHECK(encode_history(History(2, "CD|DC")) == 6);
  }

  TEST_CASE("malformed history length") {
    CHECK_THROWS_WITH_AS(History(1, "CCC"), "history length must be 2N", std::invalid_argument);
    CHECK_THROWS_WITH_AS(History(2, "CC"), "history length must be 2N", std::invalid_argument);
    CHECK_THROWS_AS(History(1, "CX"), std::invalid_argument);
  }

  TEST_CASE("decode inverts encode for every history up to N = 3") {
    for (int n = 1; n <= 3; ++n) {
      for (StateIndex i = 0; i < state_count(n); ++i) {
        const History h = decode_history(i, n);
        CHECK(encode_history(h) == i);
        CHECK(History(n, h.str()) == h);
      }
    }
  }

  TEST_CASE("follower_index examples") {
    CHECK(follower_index(History(1, "CD"), Action::C) == 2);  // DC
    CHECK(follower_index(History(1, "CC"), Action::D) == 1);  // CD
    CHECK(follower_index(History(2, "CDDC"), Action::D) == 13);  // DDCD
    CHECK(decode_history(13, 2).str() == "DDCD");
  }

  TEST_CASE("follower_index drops the first symbol and appends the leader's action") {
    for (int n = 1; n <= 3; ++n) {
      for (StateIndex i = 0; i < state_count(n); ++i) {
        const std::string w = decode_history(i, n).str();
        for (Action a : {Action::C, Action::D}) {
          const StateIndex k = follower_index(i, a, n);
          CHECK(k < state_count(n));
          CHECK(decode_history(k, n).str() == w.substr(1) + to_char(a));
        }
      }
    }
  }

  TEST_CASE("successor shifts out the oldest pair") {
    const StateIndex s = successor(encode_history(History(2, "CDDC")), Action::D, Action::C, 2);
    CHECK(decode_history(s, 2).str() == "DCDC");
    CHECK(state_label(6, 2) == "CD|DC");
  }

  TEST_CASE("raw_from_donation examples") {
    const RawPayoffs r = raw_from_donation(PayoffParams(1.0, 0.3), 0.0);
    CHECK(r.a == 0.0);
    CHECK(r.b == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.c == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(r.d == doctest::Approx(-1.3).epsilon(1e-15));
    CHECK(r.c - r.a < r.b - r.d);

    const RawPayoffs s = raw_from_donation(PayoffParams(2.0, 0.5), 1.0);
    CHECK(s.a == 1.0);
    CHECK(s.b == 1.0);
    CHECK(s.c == 1.5);
    CHECK(s.d == -3.5);
  }

  TEST_CASE("validate_raw examples") {
    CHECK(validate_raw({0, 1, 0.3, -1.3}));
    CHECK_FALSE(validate_raw({1, 1, 0.5, 0}));
    CHECK_FALSE(validate_raw({0, 1, 0.9, 0.5}));
  }

  TEST_CASE("raw_from_donation always passes validation") {
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) {
      const double B = rng.uniform(0.01, 10.0);
      const double C = rng.uniform(0.0, 1.0) * B;
      if (!(C > 0.0 && C < B)) continue;
      CHECK(validate_raw(raw_from_donation(PayoffParams(B, C), rng.uniform(-5.0, 5.0))));
    }
  }

  TEST_CASE("equal gains from switching") {
    Rng rng(12);
    for (int i = 0; i < 200; ++i) {
      const double B = rng.uniform(0.5, 3.0);
      const PayoffParams pp(B, rng.uniform(0.01, 0.49) * B);
      CHECK(pp.reward() + pp.punishment() == pp.sucker() + pp.temptation());
    }
    const PayoffParams pp(1.0, 0.3);
    CHECK(pp.reward() == doctest::Approx(0.7));
    CHECK(pp.sucker() == doctest::Approx(-0.3));
    CHECK(pp.temptation() == 1.0);
    CHECK(pp.punishment() == 0.0);
  }

  TEST_CASE("parameter and strategy validation") {
    CHECK_THROWS_AS(PayoffParams(1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(PayoffParams(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Strategy(1, {0.1, 0.2, 0.3}), std::invalid_argument);
    CHECK_THROWS_AS(Strategy(1, {0.1, 0.2, 0.3, 1.5}), std::invalid_argument);
    CHECK_THROWS_AS(state_count(0), std::invalid_argument);
    CHECK(memory_for_size(16) == 2);
    CHECK(memory_for_size(15) == 0);
    const Strategy s(1, {0.1, 0.2, 0.3, 0.4});
    CHECK(s.at(History(1, "DC")) == 0.3);
  }
}
