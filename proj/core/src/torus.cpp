#include "altpd/torus.hpp"

#include <cmath>
#include <stdexcept>

#include "altpd/errors.hpp"

namespace altpd {

namespace {

void require_unit_benefit(const PayoffParams& params) {
  if (params.benefit() != 1.0) throw std::invalid_argument("torus reduction requires B = 1");
}

double angle_distance(double a, double b) {
  const double d = std::abs(wrap_angle(a) - wrap_angle(b));
  return std::min(d, kTwoPi - d);
}

// Desingularised field with a = sqrt(C1), b = sqrt(C2) passed explicitly,
// so that the psi-equation can be evaluated as a polynomial in a.
AngleRates desingularized(double ph, double ps, double a, double b, double C) {
  const double sph = std::sin(ph), cph = std::cos(ph);
  const double sps = std::sin(ps), cps = std::cos(ps);
  const double C1 = a * a, C2 = b * b;
  const double phi_dot =
      0.5 * C2 * cps *
      (2 * a * cph * (sps * (-C + b * sps + 1) + cps * (2 * C - (1 - 2 * C) * b * sps) - C * b) +
       a * sph *
           (-(2 * C + 1) * b * std::sin(2 * ps) + (2 * C + 1) * b + 2 * (C + 1) * sps - 4 * (C + 1) * cps +
            b * std::cos(2 * ps)) +
       (1 - C) * b * (std::sin(2 * ps) + std::cos(2 * ps) - 1));
  const double psi_dot =
      -a * sph *
      (-C1 * cph * cph * (b * ((1 - C) * sps + C * cps) - C + 1) +
       C1 * sph * cph * (b * ((1 - 2 * C) * sps + (2 * C + 1) * cps) - C + 1) +
       a * b * cph * ((1 - C) * sps + (C + 1) * cps) - a * b * sph * (a * sph + 2) * ((C + 1) * cps - C * sps));
  return {phi_dot, psi_dot};
}

}  // namespace

double wrap_angle(double a) noexcept {
  double r = std::fmod(a, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

bool Interval::contains(double angle) const noexcept {
  const double a = wrap_angle(angle);
  return a > lo && a < hi;
}

Point4 to_cube(const TorusPoint& pt) {
  const double a = std::sqrt(pt.level.C1);
  const double b = std::sqrt(pt.level.C2);
  return {1 + a * std::sin(pt.phi), 1 + b * std::sin(pt.psi), a * std::cos(pt.phi), b * std::cos(pt.psi)};
}

TorusPoint to_torus(const Point4& x) {
  const InvariantPair inv = invariants(x);
  if (inv.F1 < 1e-14 || inv.F2 < 1e-14) throw MathError("point on a degenerate torus");
  return {wrap_angle(std::atan2(x[0] - 1, x[2])), wrap_angle(std::atan2(x[1] - 1, x[3])), {inv.F1, inv.F2}};
}

Interval admissible_interval(double c) {
  if (!(c > 0.0 && c <= 2.0)) throw std::invalid_argument("level value must lie in (0, 2]");
  if (c <= 1.0) return {1.5 * kPi, kTwoPi};
  const double r = 1.0 / std::sqrt(c);
  return {kTwoPi - std::asin(r), kTwoPi - std::acos(r)};
}

AdmissibleRectangle admissible_rectangle(const TorusLevel& level) {
  return {admissible_interval(level.C1), admissible_interval(level.C2)};
}

std::pair<double, double> toric_denominator_factors(const TorusPoint& pt) {
  const double a = std::sqrt(pt.level.C1), b = std::sqrt(pt.level.C2);
  const double sph = std::sin(pt.phi), cph = std::cos(pt.phi);
  const double sps = std::sin(pt.psi), cps = std::cos(pt.psi);
  const double u = cps * cph + sph * (sps - 2 * cps);
  const double w = a * cph * (b * (cps - 2 * sps) - 2) + b * sps * (a * sph + 2);
  return {u, w};
}

double toric_denominator(const TorusPoint& pt) {
  const auto [u, w] = toric_denominator_factors(pt);
  return 4 * u * u * w;
}

AngleRates torus_field(const TorusPoint& pt, const PayoffParams& params) {
  if (!(std::abs(toric_denominator(pt)) >= 1e-14)) throw MathError("toric denominator vanishes");
  const Point4 d = field_closed_form(to_cube(pt), params);
  const double a = std::sqrt(pt.level.C1), b = std::sqrt(pt.level.C2);
  return {(std::cos(pt.phi) * d[0] - std::sin(pt.phi) * d[2]) / a,
          (std::cos(pt.psi) * d[1] - std::sin(pt.psi) * d[3]) / b};
}

AngleRates torus_field_explicit(const TorusPoint& pt, const PayoffParams& params) {
  require_unit_benefit(params);
  const double C = params.cost();
  const double C1 = pt.level.C1, C2 = pt.level.C2;
  const double a = std::sqrt(C1), b = std::sqrt(C2);
  const double G = toric_denominator(pt);
  if (!(std::abs(G) >= 1e-14)) throw MathError("toric denominator vanishes");
  const double ph = pt.phi, ps = pt.psi;
  const double sph = std::sin(ph), cph = std::cos(ph);
  const double sps = std::sin(ps), cps = std::cos(ps);

  const double mix = 2 * C * sph - 2 * C * cph + sph + cph;
  const double phi_num =
      cps * (2 * a *
                 (-b * std::sin(2 * ps) * mix + b * mix + 2 * sps * (C * sph - C * cph + sph + cph) +
                  b * std::cos(2 * ps) * (sph - cph)) +
             (C - 1) * b) +
      8 * a * cps * cps * (C * cph - (C + 1) * sph) - (C - 1) * b * (sps + std::sin(3 * ps) + std::cos(3 * ps));

  const double psi_br =
      -b * cps *
          (a * ((2 * C + 1) * std::sin(2 * ph) + std::cos(2 * ph)) - (2 * C + 1) * a - 4 * (C + 1) * sph +
           2 * (C + 1) * cph) +
      b * sps *
          ((2 * C - 1) * a * std::sin(2 * ph) + a * (-2 * C + std::cos(2 * ph) + 1) - 4 * C * sph +
           2 * (C - 1) * cph) -
      (C - 1) * a * (-std::sin(2 * ph) + std::cos(2 * ph) + 1);

  return {phi_num / (C1 * G), 2 * sph * psi_br / (C2 * G)};
}

AngleRates desingularized_field(const TorusPoint& pt, const PayoffParams& params) {
  require_unit_benefit(params);
  return desingularized(pt.phi, pt.psi, std::sqrt(pt.level.C1), std::sqrt(pt.level.C2), params.cost());
}

EquilibriumResiduals equilibrium_residuals(const TorusPoint& pt, double C) {
  const double a = std::sqrt(pt.level.C1), b = std::sqrt(pt.level.C2);
  const double sph = std::sin(pt.phi), cph = std::cos(pt.phi);
  const double sps = std::sin(pt.psi), cps = std::cos(pt.psi);
  const double row1 = a * sph - b * ((1 - C) * sps + C * cps);
  const double row2 = a * cph - b * ((C + 1) * cps - C * sps);
  return {std::max(std::abs(row1), std::abs(row2)), a * (sph - cph) - b * (sps - cps),
          std::sin(pt.phi - kPi / 4) - (b / a) * std::sin(pt.psi - kPi / 4)};
}

std::vector<TorusPoint> torus_equilibria(const TorusLevel& level, const PayoffParams& params) {
  require_unit_benefit(params);
  const double C = params.cost();
  const double C1 = level.C1, C2 = level.C2;
  const AdmissibleRectangle rect = admissible_rectangle(level);
  std::vector<TorusPoint> found;
  if (rect.empty()) return found;

  const double norm = std::sqrt(1 + C * C);
  const double r = (C2 + 2 * C2 * C * C - C1) / (2 * C * norm * C2);
  if (r < -1.0 || r > 1.0) return found;
  const double theta = std::acos(C / norm);
  const double asr = std::asin(r);

  for (int k = -1; k <= 1; ++k) {
    const double psis[2] = {0.5 * (theta + asr) + kPi * k, 0.5 * (theta - asr) + kPi / 2 + kPi * k};
    for (double psi : psis) {
      if (!rect.psi.contains(psi)) continue;
      const double s = std::sqrt(C2 / C1) * std::sin(psi - kPi / 4);
      if (s < -1.0 || s > 1.0) continue;
      const double as = std::asin(s);
      for (int l = -1; l <= 1; ++l) {
        const double phis[2] = {kPi / 4 + as + kTwoPi * l, 5 * kPi / 4 - as + kTwoPi * l};
        for (double phi : phis) {
          if (!rect.phi.contains(phi)) continue;
          const TorusPoint pt{wrap_angle(phi), wrap_angle(psi), level};
          if (!(equilibrium_residuals(pt, C).system < 1e-10)) continue;
          AngleRates v{};
          try {
            v = torus_field(pt, params);
          } catch (const MathError&) {
            continue;
          }
          if (!(std::hypot(v.phi_dot, v.psi_dot) < 1e-8)) continue;
          bool duplicate = false;
          for (const TorusPoint& q : found) {
            if (angle_distance(q.phi, pt.phi) < 1e-9 && angle_distance(q.psi, pt.psi) < 1e-9) duplicate = true;
          }
          if (!duplicate) found.push_back(pt);
        }
      }
    }
  }
  return found;
}

double slow_coefficient(double phi, double psi, const TorusLevel& level, const PayoffParams& params) {
  require_unit_benefit(params);
  // psi_dot = C1 F + sqrt(C1)^3 H; evaluating at sqrt(C1) = +-1 isolates F.
  const double b = std::sqrt(level.C2);
  const double C = params.cost();
  return 0.5 * (desingularized(phi, psi, 1.0, b, C).psi_dot + desingularized(phi, psi, -1.0, b, C).psi_dot);
}

double averaged_slow_field(double psi, const TorusLevel& level, const PayoffParams& params) {
  constexpr int panels = 1024;
  const double h = kTwoPi / panels;
  double sum = slow_coefficient(0.0, psi, level, params) + slow_coefficient(kTwoPi, psi, level, params);
  for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * slow_coefficient(i * h, psi, level, params);
  return sum * h / 3.0;
}

double averaged_slow_field_exact(double psi, double C2, double C) {
  return kTwoPi * std::sqrt(C2) * ((C + 1) * std::cos(psi) - C * std::sin(psi));
}

TorusTrajectory integrate_torus(const TorusPoint& start, const PayoffParams& params, const OdeOptions& opts) {
  const TorusLevel level = start.level;
  auto rhs = [level, &params](const OdeState& s, OdeState& d) {
    const AngleRates v = torus_field({s[0], s[1], level}, params);
    d.assign({v.phi_dot, v.psi_dot});
  };
  OdeResult r = integrate_ode(rhs, {start.phi, start.psi}, opts);
  TorusTrajectory out;
  out.level = level;
  out.times = std::move(r.times);
  out.phi.reserve(r.states.size());
  out.psi.reserve(r.states.size());
  for (const auto& s : r.states) {
    out.phi.push_back(s[0]);
    out.psi.push_back(s[1]);
  }
  out.status = r.status;
  out.message = std::move(r.message);
  return out;
}

}  // namespace altpd
