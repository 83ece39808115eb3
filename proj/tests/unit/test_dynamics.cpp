#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "altpd/dynamics.hpp"
#include "altpd/errors.hpp"
#include "altpd/random.hpp"
#include "oracles.hpp"

using namespace altpd;

namespace {

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double inf_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_SUITE("dynamics") {
  TEST_CASE("invariants examples") {
    const InvariantPair a = invariants(std::vector<double>{1, 1, 0, 0});
    CHECK(a.F1 == 0.0);
    CHECK(a.F2 == 0.0);
    const InvariantPair b = invariants(std::vector<double>{0.5, 0.3, 0.8, 0.1});
    CHECK(b.F1 == doctest::Approx(0.89).epsilon(1e-14));
    CHECK(b.F2 == doctest::Approx(0.50).epsilon(1e-14));
    const InvariantPair c = invariants(std::vector<double>{0, 0, 1, 1});
    CHECK(c.F1 == 2.0);
    CHECK(c.F2 == 2.0);
  }

  TEST_CASE("closed form matches the numeric gradient at the centre") {
    const PayoffParams pp(1.0, 0.3);
    const Point4 x{0.5, 0.5, 0.5, 0.5};
    const Point4 cf = field_closed_form(x, pp);
    const std::vector<double> num = field_numeric(x, pp);
    CHECK(inf_diff(cf, num) / std::max(inf_norm(num), 1e-3) < 1e-5);
  }

  TEST_CASE("closed form matches the power-iteration gradient") {
    Rng rng(41);
    const PayoffParams pp(1.0, 0.3);
    for (int k = 0; k < 20; ++k) {
      const Point4 x = testing::random_interior(rng, 0.05, 0.95);
      const Point4 cf = field_closed_form(x, pp);
      const std::vector<double> ref = testing::stationary_gradient(x, pp);
      CHECK(inf_diff(cf, ref) / std::max(inf_norm(ref), 1e-3) < 1e-5);
    }
  }

  TEST_CASE("closed form at general benefit") {
    Rng rng(42);
    for (int k = 0; k < 20; ++k) {
      const PayoffParams pp(rng.uniform(0.5, 3.0), 0.0 + rng.uniform(0.05, 0.45));
      const Point4 x = testing::random_interior(rng, 0.05, 0.95);
      const Point4 cf = field_closed_form(x, pp);
      const std::vector<double> num = field_numeric(x, pp);
      CHECK(inf_diff(cf, num) / std::max(inf_norm(num), 1e-3) < 1e-5);
    }
  }

  TEST_CASE("p4 = 0 freezes the first three components") {
    const PayoffParams pp(1.0, 0.3);
    const Point4 f = field_closed_form({0.3, 0.6, 0.2, 0.0}, pp);
    CHECK(f[0] == 0.0);
    CHECK(f[1] == 0.0);
    CHECK(f[2] == 0.0);
  }

  TEST_CASE("numeric field works at memory 2") {
    Rng rng(43);
    const Strategy s = random_strategy(2, rng, 0.1, 0.9);
    const std::vector<double> f = field_numeric(s.probs(), PayoffParams(1.0, 0.3));
    CHECK(f.size() == 16);
    for (double v : f) CHECK(std::isfinite(v));
    CHECK_THROWS_AS(field_numeric(std::vector<double>{0.5, 0.5, 0.5}, PayoffParams(1.0, 0.3)), std::invalid_argument);
  }

  TEST_CASE("plane point example") {
    const PayoffParams pp(1.0, 0.3);
    const Point4 x = plane_point(0.5, 0.2, pp);
    CHECK(x[0] == doctest::Approx(0.71).epsilon(1e-14));
    CHECK(x[2] == doctest::Approx(0.41).epsilon(1e-14));
    CHECK(inf_norm(field_closed_form(x, pp)) < 1e-12);
    CHECK(inf_norm(field_numeric(x, pp)) < 1e-8);
  }

  TEST_CASE("families are zeros of the field") {
    const PayoffParams pp(1.0, 0.3);
    const auto fam = equilibrium_families(pp);
    REQUIRE(fam.size() == 5);
    CHECK(fam[0].name == "p1=1");
    CHECK(fam[1].location == FamilyLocation::interior);
    CHECK(fam[3].location == FamilyLocation::exterior);

    const std::vector<double> two = {0.4, 0.15};
    for (int i : {0, 1, 2}) {
      const Point4 x = fam[i](two);
      CHECK_MESSAGE(inf_norm(field_numeric(x, pp)) < 1e-7, fam[i].name);
    }
    const std::vector<double> one = {0.3};
    const Point4 ext = fam[3](one);
    CHECK(ext[0] > 1.0);
    CHECK(inf_norm(field_numeric(ext, pp)) < 1e-7);

    const std::vector<double> corner = {1.0};
    const Point4 d = fam[4](corner);
    CHECK(d == Point4{1.0, 1.0, 0.0, 0.0});
  }

  TEST_CASE("plane equilibrium classification") {
    const PayoffParams pp(1.0, 0.3);
    const EquilibriumPoint e = classify_equilibrium(plane_point(0.5, 0.2, pp), pp);
    CHECK(e.zero_eigenvalues == 2);
    CHECK(e.lambda1.real() > 0.0);
    const auto [l1, l2] = plane_eigenvalues(0.5, 0.2, 0.3);
    const double a = std::max(l1.real(), l2.real()), b = std::min(l1.real(), l2.real());
    CHECK(e.lambda1.real() == doctest::Approx(a).epsilon(1e-5));
    CHECK(e.lambda2.real() == doctest::Approx(b).epsilon(1e-5));
    CHECK(to_string(e.kind) == "degenerate-saddle");

    CHECK_THROWS_WITH_AS(classify_equilibrium({0.5, 0.5, 0.5, 0.5}, pp), "not an equilibrium", MathError);
  }

  TEST_CASE("two zero eigenvalues where the field varies fast") {
    // Large third derivatives here; plain central differences leave 1e-6 residue.
    for (const auto& [c, p2, p4] : {std::array<double, 3>{0.1, 0.9, 0.05}, std::array<double, 3>{0.3, 0.85, 0.05},
                                    std::array<double, 3>{0.1, 0.95, 0.1}}) {
      const PayoffParams pp(1.0, c);
      const EquilibriumPoint e = classify_equilibrium(plane_point(p2, p4, pp), pp);
      CHECK(e.zero_eigenvalues == 2);
      const auto [l1, l2] = plane_eigenvalues(p2, p4, c);
      CHECK(e.lambda1.real() == doctest::Approx(std::max(l1.real(), l2.real())).epsilon(1e-6));
      CHECK(e.lambda2.real() == doctest::Approx(std::min(l1.real(), l2.real())).epsilon(1e-6));
    }
  }

  TEST_CASE("jacobian annihilates the plane directions") {
    const PayoffParams pp(1.0, 0.3);
    const Point4 x = plane_point(0.4, 0.3, pp);
    const auto jac = jacobian(x, pp);
    // Tangent vectors of the plane in the p2 and p4 directions.
    const Point4 t2{0.7, 1.0, -0.3, 0.0}, t4{0.3, 0.0, 1.3, 1.0};
    for (const Point4& t : {t2, t4}) {
      for (int i = 0; i < 4; ++i) {
        double s = 0.0;
        for (int j = 0; j < 4; ++j) s += jac[i][j] * t[j];
        CHECK(std::abs(s) < 1e-7);
      }
    }
  }

  TEST_CASE("reversal and time reversal image") {
    const std::vector<double> v = {0.1, 0.2, 0.3, 0.4};
    CHECK(reversal(v) == std::vector<double>{0.4, 0.3, 0.2, 0.1});
    const std::vector<double> img = time_reversal_image(v);
    CHECK(inf_diff(img, std::vector<double>{0.6, 0.7, 0.8, 0.9}) < 1e-15);
  }

  TEST_CASE("field at the mirror image is the reversed field") {
    Rng rng(44);
    const PayoffParams pp(1.0, 0.3);
    for (int k = 0; k < 50; ++k) {
      const Point4 x = testing::random_interior(rng, 0.05, 0.95);
      const std::vector<double> y = time_reversal_image(x);
      const Point4 gy = field_closed_form({y[0], y[1], y[2], y[3]}, pp);
      const std::vector<double> rg = reversal(field_closed_form(x, pp));
      CHECK(inf_diff(gy, rg) <= 1e-10 * std::max(1.0, inf_norm(rg)));
    }
  }

  TEST_CASE("invariants are conserved along trajectories") {
    Rng rng(45);
    const PayoffParams pp(1.0, 0.3);
    IntegrateOptions opts;
    opts.t_end = 20.0;
    for (int k = 0; k < 5; ++k) {
      const Point4 x0 = testing::random_interior(rng, 0.1, 0.9);
      const Trajectory tr = integrate(x0, pp, opts);
      const InvariantPair i0 = invariants(tr.states.front());
      double drift = 0.0;
      for (const auto& s : tr.states) {
        const InvariantPair i = invariants(s);
        drift = std::max({drift, std::abs(i.F1 - i0.F1), std::abs(i.F2 - i0.F2)});
      }
      CHECK(drift < 1e-8);
    }
  }

  TEST_CASE("equilibrium start stays put") {
    const PayoffParams pp(1.0, 0.3);
    const Point4 x0 = plane_point(0.5, 0.2, pp);
    const Trajectory tr = integrate(x0, pp, {});
    CHECK(tr.status == IntegrationStatus::completed);
    CHECK(inf_diff(tr.states.back(), x0) < 1e-7);
  }

  TEST_CASE("mirror image runs backwards in time") {
    const PayoffParams pp(1.0, 0.3);
    const Point4 x0{0.3, 0.6, 0.4, 0.5};
    IntegrateOptions fwd;
    fwd.t_end = 1.0;
    const Trajectory a = integrate(x0, pp, fwd);
    REQUIRE(a.status == IntegrationStatus::completed);
    IntegrateOptions back = fwd;
    back.t_end = -1.0;
    const Trajectory b = integrate(time_reversal_image(x0), pp, back);
    REQUIRE(b.status == IntegrationStatus::completed);
    REQUIRE(a.states.size() == b.states.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.states.size(); ++i)
      worst = std::max(worst, inf_diff(time_reversal_image(a.states[i]), b.states[i]));
    CHECK(worst < 1e-6);
  }

  TEST_CASE("rk45 agrees with rk4") {
    const PayoffParams pp(1.0, 0.3);
    const Point4 x0{0.3, 0.6, 0.4, 0.5};
    IntegrateOptions a;
    a.t_end = 1.0;
    IntegrateOptions b = a;
    b.method = Method::rk45;
    const Trajectory ta = integrate(x0, pp, a), tb = integrate(x0, pp, b);
    REQUIRE(ta.status == IntegrationStatus::completed);
    REQUIRE(tb.status == IntegrationStatus::completed);
    CHECK(inf_diff(ta.states.back(), tb.states.back()) < 1e-7);
  }

  TEST_CASE("trajectory towards the boundary halts") {
    const PayoffParams pp(1.0, 0.3);
    IntegrateOptions o;
    o.t_end = 5.0;
    const Trajectory t = integrate(Point4{0.3, 0.6, 0.4, 0.5}, pp, o);
    CHECK(t.status == IntegrationStatus::boundary);
    CHECK(t.times.back() < 5.0);
    for (double v : t.states.back()) {
      CHECK(v > 0.0);
      CHECK(v < 1.0);
    }
  }

  TEST_CASE("integration input checks") {
    const PayoffParams pp(1.0, 0.3);
    CHECK_THROWS_AS(integrate(std::vector<double>{0.0, 0.5, 0.5, 0.5}, pp, {}), std::invalid_argument);
  }

  TEST_CASE("memory-2 flow by finite differences") {
    Rng rng(46);
    const Strategy s = random_strategy(2, rng, 0.3, 0.7);
    IntegrateOptions opts;
    opts.t_end = 0.05;
    opts.dt = 1e-2;
    const Trajectory tr = integrate(s.probs(), PayoffParams(1.0, 0.3), opts);
    CHECK(tr.status == IntegrationStatus::completed);
    CHECK(tr.states.back().size() == 16);
  }
}
