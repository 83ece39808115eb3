#pragma once

// Memory-1 flow restricted to a level set of (F1, F2), a two-torus, in the
// angles
//   p1 = 1 + sqrt(C1) sin(phi), p3 = sqrt(C1) cos(phi),
//   p2 = 1 + sqrt(C2) sin(psi), p4 = sqrt(C2) cos(psi).
// The explicit toric formulas (explicit field, desingularised field,
// equilibria) assume the normalisation B = 1; the pushforward field works
// for any B.

#include <utility>
#include <vector>

#include "altpd/dynamics.hpp"
#include "altpd/ode.hpp"
#include "altpd/strategy.hpp"

namespace altpd {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Reduces an angle to [0, 2 pi).
double wrap_angle(double a) noexcept;

struct TorusLevel {
  double C1;
  double C2;
};

struct TorusPoint {
  double phi;
  double psi;
  TorusLevel level;
};

struct Interval {
  double lo;
  double hi;

  bool empty() const noexcept { return !(lo < hi); }
  // Open interval test on the wrapped angle.
  bool contains(double angle) const noexcept;
};

struct AdmissibleRectangle {
  Interval phi;
  Interval psi;

  bool empty() const noexcept { return phi.empty() || psi.empty(); }
  bool contains(double phi_angle, double psi_angle) const noexcept {
    return phi.contains(phi_angle) && psi.contains(psi_angle);
  }
};

Point4 to_cube(const TorusPoint& pt);

// Throws MathError "point on a degenerate torus" if C1 or C2 < 1e-14.
TorusPoint to_torus(const Point4& x);

// Angles whose circle points lie in the open unit square: (3pi/2, 2pi) for
// a level value <= 1, (2pi - arcsin(1/sqrt(c)), 2pi - arccos(1/sqrt(c)))
// for 1 < c <= 2 (empty at c = 2). Throws std::invalid_argument outside (0, 2].
Interval admissible_interval(double level_value);
AdmissibleRectangle admissible_rectangle(const TorusLevel& level);

struct AngleRates {
  double phi_dot;
  double psi_dot;
};

// Common denominator G of the explicit toric field.
double toric_denominator(const TorusPoint& pt);
// G = 4 u^2 w; returns (u, w). u and w change sign across the curves G = 0.
std::pair<double, double> toric_denominator_factors(const TorusPoint& pt);

// Chain rule through the angle parametrisation applied to the closed-form
// cube field. Throws MathError "toric denominator vanishes" when |G| < 1e-14.
AngleRates torus_field(const TorusPoint& pt, const PayoffParams& params);

// The explicit two-equation toric system (B = 1).
AngleRates torus_field_explicit(const TorusPoint& pt, const PayoffParams& params);

// Polynomial-trigonometric field equal to torus_field * C1 * C2 * G / 4.
// Defined everywhere, including C1 = 0 or C2 = 0 (B = 1).
AngleRates desingularized_field(const TorusPoint& pt, const PayoffParams& params);

// Residuals of the three equivalent forms of the equilibrium condition:
// the plane equations in angles (max of both rows), their difference
// sqrt(C1)(sin phi - cos phi) - sqrt(C2)(sin psi - cos psi), and
// sin(phi - pi/4) - sqrt(C2/C1) sin(psi - pi/4).
struct EquilibriumResiduals {
  double system;
  double difference;
  double final_form;
};
EquilibriumResiduals equilibrium_residuals(const TorusPoint& pt, double cost);

// Closed-form equilibria inside the admissible rectangle: both psi
// branches and both phi branches for k, l in {-1, 0, 1}, kept when the
// plane residual is < 1e-10 and |torus_field| < 1e-8. At most four (B = 1).
std::vector<TorusPoint> torus_equilibria(const TorusLevel& level, const PayoffParams& params);

// Coefficient of C1 in the desingularised psi-equation, as a function of phi.
double slow_coefficient(double phi, double psi, const TorusLevel& level, const PayoffParams& params);

// Integral of slow_coefficient over phi in [0, 2pi] (composite Simpson,
// 1024 panels).
double averaged_slow_field(double psi, const TorusLevel& level, const PayoffParams& params);

// 2 pi sqrt(C2) ((C + 1) cos psi - C sin psi)
double averaged_slow_field_exact(double psi, double C2, double cost);

struct TorusTrajectory {
  std::vector<double> times;
  std::vector<double> phi;  // unwrapped
  std::vector<double> psi;  // unwrapped
  TorusLevel level;
  IntegrationStatus status = IntegrationStatus::completed;
  std::string message;
};

// Integrates torus_field (angles are not wrapped, so the result can be
// compared continuously with a cube trajectory).
TorusTrajectory integrate_torus(const TorusPoint& start, const PayoffParams& params, const OdeOptions& opts);

}  // namespace altpd
