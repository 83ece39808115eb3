#include "cli.hpp"

#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "altpd/errors.hpp"

namespace altpd::cli {

namespace {

void add_run_options(CLI::App& app, RunConfig& cfg) {
  app.add_option("--b", cfg.b, "benefit B")->capture_default_str();
  app.add_option("--c", cfg.c, "cost C")->capture_default_str();
  app.add_option("--n", cfg.n, "memory N (1, 2 or 3)")->capture_default_str();
  app.add_option("--p", cfg.p, "leader strategy (or start point): allc, alld, tft, random:SEED or a,b,c,...")
      ->capture_default_str();
  app.add_option("--q", cfg.q, "follower strategy, same syntax as --p")->capture_default_str();
  app.add_option("--t", cfg.t, "integration time T")->capture_default_str();
  app.add_option("--dt", cfg.dt, "step size")->capture_default_str();
  app.add_option("--method", cfg.method, "rk4 or rk45")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for sampled checks")->capture_default_str();
  app.add_option("--rounds", cfg.rounds, "Monte Carlo rounds")->capture_default_str();
  app.add_option("--c1", cfg.c1, "torus level C1")->capture_default_str();
  app.add_option("--c2", cfg.c2, "torus level C2")->capture_default_str();
  app.add_option("--grid", cfg.grid, "torus grid resolution per angle")->capture_default_str();
  app.add_option("--out", cfg.out, "output directory")->capture_default_str();
  app.add_option("--format", cfg.format, "csv or json")->capture_default_str();
  app.add_option("--stride", cfg.stride, "write every k-th integration step")->capture_default_str();
  app.add_flag("--corrupt-payoff", cfg.corrupt_payoff, "perturb the payoff vector (negative control for verify)")
      ->group("");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Adaptive dynamics of the alternating prisoner's dilemma", "altpd"};
  RunConfig cfg;
  add_run_options(app, cfg);
  app.set_config("--config", "", "flat key=value file mirroring the flags (flags override it)");
  app.require_subcommand(1);
  app.fallthrough();

  CLI::App* matrix = app.add_subcommand("matrix", "transition matrix, stationary distribution and payoffs");
  CLI::App* integrate = app.add_subcommand("integrate", "adaptive-dynamics trajectory from --p");
  CLI::App* torus = app.add_subcommand("torus", "toric field grid, rectangle, denominator zeros, equilibria");
  CLI::App* verify = app.add_subcommand("verify", "run the property suite");
  for (CLI::App* sub : {matrix, integrate, torus, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*matrix) return cmd_matrix(cfg, out, err);
    if (*integrate) return cmd_integrate(cfg, out, err);
    if (*torus) return cmd_torus(cfg, out, err);
    if (*verify) return cmd_verify(cfg, out, err);
  } catch (const MathError& e) {
    err << "error: " << e.what() << '\n';
    return kDegenerate;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailed;
  }
  return kUsage;
}

}  // namespace altpd::cli
