#pragma once

// Adaptive dynamics x' = dA(y, x)/dy at y = x, where A(p, q) is the long-run
// payoff of leader p against follower q and the resident plays both roles.

#include <array>
#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "altpd/ode.hpp"
#include "altpd/strategy.hpp"

namespace altpd {

using Point4 = std::array<double, 4>;

// Central differences of payoff_by_determinant in each leader coordinate,
// follower fixed at x. Memory is inferred from x.size() (must be 4^N).
std::vector<double> field_numeric(std::span<const double> x, const PayoffParams& params, double h = 1e-6);

// Explicit rational memory-1 field. Throws MathError "field denominator
// vanishes" when |A| < 1e-14.
Point4 field_closed_form(const Point4& x, const PayoffParams& params);

// Denominator A of the closed form.
double field_denominator(const Point4& x);

struct InvariantPair {
  double F1;
  double F2;
};

// ((x1 - 1)^2 + x3^2, (x2 - 1)^2 + x4^2)
InvariantPair invariants(std::span<const double> x);

// Index-reversing permutation (the action of J4).
std::vector<double> reversal(std::span<const double> v);

// phi(x) = 1 - reversal(x). If x(t) solves the flow, so does phi(x(-t)).
std::vector<double> time_reversal_image(std::span<const double> x);

enum class FieldMethod { automatic, closed_form, numeric };

struct IntegrateOptions {
  double t_end = 10.0;
  double dt = 1e-3;
  Method method = Method::rk4;
  // automatic: closed form for memory 1, finite differences otherwise.
  FieldMethod field = FieldMethod::automatic;
  int record_every = 1;
  double boundary_margin = 1e-9;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  IntegrationStatus status = IntegrationStatus::completed;
  std::string message;
};

// Halts with status boundary once a coordinate leaves
// [margin, 1 - margin], and with status singular if the field cannot be
// evaluated.
Trajectory integrate(std::span<const double> x0, const PayoffParams& params, const IntegrateOptions& opts);

// The right-hand side used by integrate().
OdeRhs make_field(const PayoffParams& params, int memory, FieldMethod method);

enum class FamilyLocation { interior, boundary, exterior };
std::string_view to_string(FamilyLocation loc) noexcept;

// One family of memory-1 equilibria, parametrised by one or two free
// coordinates (in the order listed in `parameters`).
struct EquilibriumFamily {
  std::string name;
  FamilyLocation location;
  std::vector<std::string> parameters;
  std::function<Point4(std::span<const double>)> point;

  Point4 operator()(std::span<const double> args) const { return point(args); }
};

// The five families, in the order: boundary p1 = 1, interior plane,
// boundary p4 = 0, exterior p1 = C p4 / B + 1, degenerate p3 = 0.
std::vector<EquilibriumFamily> equilibrium_families(const PayoffParams& params);

// p1 = ((B - C) p2 + C (p4 + 1)) / B, p3 = (C (1 - p2) + p4 (B + C)) / B.
Point4 plane_point(double p2, double p4, const PayoffParams& params);

enum class EquilibriumKind { degenerate_saddle, degenerate_source, boundary, other };
std::string_view to_string(EquilibriumKind kind) noexcept;

struct EquilibriumPoint {
  Point4 x;
  std::array<std::complex<double>, 4> eigenvalues;  // sorted by descending real part
  EquilibriumKind kind;
  int zero_eigenvalues;  // count with |lambda| < 1e-8
  // The two remaining eigenvalues, larger real part first (set when
  // zero_eigenvalues == 2).
  std::complex<double> lambda1;
  std::complex<double> lambda2;
  double field_norm;
};

// Jacobian from jacobian() (step 1e-5), eigenvalues by a dense solver.
// Throws MathError "not an equilibrium" if the field norm at x is >= 1e-8.
EquilibriumPoint classify_equilibrium(const Point4& x, const PayoffParams& params);

// 4x4 Jacobian (row i = d xdot_i / d x_j), central differences at step and
// step / 2 combined to cancel the h^2 error term.
std::array<std::array<double, 4>, 4> jacobian(const Point4& x, const PayoffParams& params, double step = 1e-5);

// Explicit nonzero eigenvalues at the plane point with free parameters
// (p2, p4), for B = 1 and cost C.
std::pair<std::complex<double>, std::complex<double>> plane_eigenvalues(double p2, double p4, double cost);

}  // namespace altpd
