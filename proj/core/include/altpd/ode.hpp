#pragma once

// Small ODE driver shared by the cube and torus flows. Steppers come from
// Boost.Odeint; the driver adds the halt policy: a guard predicate that stops
// integration with status `boundary`, and MathError from the right-hand side
// mapped to status `singular`. The trajectory recorded so far is kept.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace altpd {

enum class Method { rk4, rk45 };

enum class IntegrationStatus { completed, boundary, singular };

std::string_view to_string(Method m) noexcept;
std::string_view to_string(IntegrationStatus s) noexcept;
// Accepts "rk4" and "rk45" (also "dopri5" for the latter).
Method method_from_string(std::string_view name);

using OdeState = std::vector<double>;
using OdeRhs = std::function<void(const OdeState& x, OdeState& dxdt)>;
// Returns false once the state has left the admissible region.
using OdeGuard = std::function<bool(const OdeState& x)>;

struct OdeOptions {
  double t_end = 1.0;    // may be negative: integrate backwards in time
  double dt = 1e-3;      // fixed step for rk4, initial step for rk45 (magnitude)
  Method method = Method::rk4;
  double rel_tol = 1e-9;  // rk45 only
  double abs_tol = 1e-12; // rk45 only
  int record_every = 1;   // keep every k-th accepted step (the final state is always kept)
};

struct OdeResult {
  std::vector<double> times;
  std::vector<OdeState> states;
  IntegrationStatus status = IntegrationStatus::completed;
  std::string message;
  long steps = 0;
};

OdeResult integrate_ode(const OdeRhs& rhs, const OdeState& x0, const OdeOptions& opts, const OdeGuard& guard = {});

}  // namespace altpd
