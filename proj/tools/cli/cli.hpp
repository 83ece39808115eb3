#pragma once

// altpd command-line surface: matrix, integrate, torus and verify.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "altpd/strategy.hpp"

namespace altpd::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kDegenerate = 2, kUsage = 64 };

struct RunConfig {
  double b = 1.0;
  double c = 0.3;
  int n = 1;
  std::string p = "random:1";
  std::string q = "random:2";
  double t = 10.0;
  double dt = 1e-3;
  std::string method = "rk4";
  std::uint64_t seed = 1;
  std::int64_t rounds = 1000000;
  double c1 = 0.5;
  double c2 = 0.5;
  int grid = 100;
  std::string out = ".";
  std::string format = "csv";
  int stride = 10;
  bool corrupt_payoff = false;  // test hook for verify
};

// Validates the invariants of a run configuration; throws
// std::invalid_argument with a readable message.
void validate(const RunConfig& cfg);

nlohmann::json to_json(const RunConfig& cfg);

// "allc", "alld", "tft" (cooperate iff the last observed symbol is C),
// "random:SEED" (entries uniform in (0, 1)) or a comma-separated list of
// 4^N probabilities.
Strategy parse_strategy(std::string_view spec, int memory);

// 17 significant digits; "nan"/"inf" for non-finite values.
std::string format_double(double v);

struct CheckResult {
  std::string name;
  bool pass;
  double measured;
  double tolerance;
};

std::vector<CheckResult> run_verify_suite(const RunConfig& cfg);

int cmd_matrix(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_integrate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_torus(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Full command line, including the program name in argv[0].
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace altpd::cli
