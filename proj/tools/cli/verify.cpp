#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

#include "altpd/chain.hpp"
#include "altpd/dynamics.hpp"
#include "altpd/errors.hpp"
#include "altpd/oracle.hpp"
#include "altpd/payoff.hpp"
#include "altpd/random.hpp"
#include "altpd/symmetry.hpp"
#include "altpd/torus.hpp"
#include "cli.hpp"

namespace altpd::cli {

namespace {

CheckResult check(std::string name, double measured, double tolerance) {
  return {std::move(name), measured <= tolerance, measured, tolerance};
}

std::string short_number(double v) {
  std::ostringstream s;
  s << std::setprecision(3) << v;
  return s.str();
}

Point4 random_point(Rng& rng, double lo, double hi) {
  return {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
}

}  // namespace

std::vector<CheckResult> run_verify_suite(const RunConfig& cfg) {
  validate(cfg);
  const PayoffParams params(cfg.b, cfg.c);
  const int top = std::max(2, cfg.n);
  Rng rng(cfg.seed);
  std::vector<CheckResult> results;

  for (int n = 1; n <= top; ++n) {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const Strategy p = random_strategy(n, rng), q = random_strategy(n, rng);
      worst = std::max(worst, build_matrix_direct(p, q).row_sum_defect());
    }
    results.push_back(check("stochastic rows N=" + std::to_string(n), worst, 1e-12));
  }

  for (int n = 2; n <= top; ++n) {
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const Strategy p = random_strategy(n, rng), q = random_strategy(n, rng);
      worst = std::max(worst,
                       (build_matrix_recursive(p, q).entries() - build_matrix_direct(p, q).entries()).cwiseAbs().maxCoeff());
    }
    results.push_back(check("recursive construction N=" + std::to_string(n), worst, 1e-15));
  }

  for (int n = 1; n <= 2; ++n) {
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const Strategy p = random_strategy(n, rng), q = random_strategy(n, rng);
      worst = std::max(worst, std::abs(payoff_by_determinant(p, q, params) - payoff_by_stationary(p, q, params)));
    }
    results.push_back(check("determinant payoff N=" + std::to_string(n), worst, 1e-9));
  }

  {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
      const Strategy p = random_strategy(1, rng, 0.05, 0.95), q = random_strategy(1, rng, 0.05, 0.95);
      const SimulationResult r = simulate(p, q, params, 200000, -1, cfg.seed, static_cast<std::uint64_t>(i));
      worst = std::max(worst, std::abs(r.mean_payoff - payoff_by_stationary(p, q, params)) / r.batch_std_error);
    }
    results.push_back(check("monte carlo payoff (batch standard errors)", worst, 3.0));
  }

  {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Point4 x = random_point(rng, 0.05, 0.95);
      const Point4 a = field_closed_form(x, params);
      const std::vector<double> b = field_numeric(x, params);
      double diff = 0.0, scale = 1e-3;
      for (int k = 0; k < 4; ++k) {
        diff = std::max(diff, std::abs(a[k] - b[k]));
        scale = std::max(scale, std::abs(b[k]));
      }
      worst = std::max(worst, diff / scale);
    }
    results.push_back(check("closed-form field vs gradient", worst, 1e-5));
  }

  {
    double worst = 0.0;
    IntegrateOptions opts;
    opts.t_end = 10.0;
    opts.record_every = 100;
    for (int i = 0; i < 3; ++i) {
      const Point4 x = random_point(rng, 0.2, 0.8);
      const Trajectory tr = integrate(x, params, opts);
      const InvariantPair start = invariants(x);
      for (const auto& s : tr.states) {
        const InvariantPair v = invariants(s);
        worst = std::max({worst, std::abs(v.F1 - start.F1), std::abs(v.F2 - start.F2)});
      }
    }
    results.push_back(check("conservation of F1, F2", worst, 1e-8));
  }

  {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Point4 x = random_point(rng, 0.05, 0.95);
      const Point4 g = field_closed_form(x, params);
      const std::vector<double> y = time_reversal_image(x);
      const Point4 gy = field_closed_form({y[0], y[1], y[2], y[3]}, params);
      for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(gy[k] - g[3 - k]));
    }
    results.push_back(check("time reversal G(phi(x)) = reversal(G(x))", worst, 1e-5));
  }

  for (int n = 1; n <= 2; ++n) {
    int failures = 0;
    for (AdmissibleLabel label : kAdmissibleLabels) {
      for (int i = 0; i < 10; ++i) {
        const Strategy p = random_strategy(n, rng);
        const Strategy q = random_strategy(n, rng);
        if (!verify_admissibility(label, n, p, q, params)) ++failures;
      }
    }
    results.push_back(check("admissible matrices N=" + std::to_string(n), failures, 0));
  }

  for (int n = 1; n <= top; ++n) {
    const PayoffVector fv = build_payoff_vector(params, n);
    std::vector<double> f(fv.values().begin(), fv.values().end());
    if (cfg.corrupt_payoff) f[0] += 0.1;
    const ReversalCheck r = reversal_identity_check(f, params, n);
    results.push_back({"reversal identity N=" + std::to_string(n), r.holds, r.max_defect, 0.0});
  }

  if (params.benefit() == 1.0) {
    double worst = 0.0;
    OdeOptions opts;
    opts.t_end = 2.0;
    opts.dt = 1e-3;
    IntegrateOptions cube;
    cube.t_end = 2.0;
    int done = 0;
    for (int attempt = 0; done < 3 && attempt < 100; ++attempt) {
      const Point4 x = random_point(rng, 0.2, 0.8);
      const TorusPoint pt = to_torus(x);
      const TorusTrajectory tt = integrate_torus(pt, params, opts);
      const Trajectory ct = integrate(x, params, cube);
      if (tt.status != IntegrationStatus::completed || ct.status != IntegrationStatus::completed) continue;
      for (std::size_t i = 0; i < tt.times.size(); ++i) {
        const Point4 y = to_cube({tt.phi[i], tt.psi[i], tt.level});
        for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(y[k] - ct.states[i][k]));
      }
      ++done;
    }
    results.push_back(done == 3 ? check("torus commuting diagram", worst, 1e-6)
                                : CheckResult{"torus commuting diagram", false, worst, 1e-6});
  }
  return results;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::vector<CheckResult> results = run_verify_suite(cfg);
  bool all = true;
  for (const CheckResult& r : results) {
    out << (r.pass ? "PASS " : "FAIL ") << r.name << "  measured=" << format_double(r.measured)
        << "  tolerance=" << short_number(r.tolerance) << '\n';
    if (!r.pass) {
      all = false;
      err << "verify: property failed: " << r.name << '\n';
    }
  }
  out << (all ? "all properties passed" : "verification failed") << '\n';
  return all ? kOk : kVerificationFailed;
}

}  // namespace altpd::cli
