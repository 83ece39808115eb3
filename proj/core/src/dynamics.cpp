#include "altpd/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "altpd/errors.hpp"
#include "altpd/payoff.hpp"

namespace altpd {

std::vector<double> field_numeric(std::span<const double> x, const PayoffParams& params, double h) {
  const int memory = memory_for_size(x.size());
  if (memory == 0) throw std::invalid_argument("strategy length must be 4^N");
  if (!(h > 0.0)) throw std::invalid_argument("step must be positive");
  std::vector<double> y(x.begin(), x.end());
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    y[i] = x[i] + h;
    const double up = payoff_by_determinant(y, x, params, memory);
    y[i] = x[i] - h;
    const double down = payoff_by_determinant(y, x, params, memory);
    y[i] = x[i];
    out[i] = (up - down) / (2.0 * h);
  }
  return out;
}

double field_denominator(const Point4& x) {
  const auto [p1, p2, p3, p4] = x;
  const double first = p1 * (p2 - 1) - 2 * p2 * p3 + p2 + p3 * p4 - 1;
  const double second = p1 * (p2 - 2 * p4 - 1) - p2 + (p3 + 2) * p4 + 1;
  return first * second * second;
}

Point4 field_closed_form(const Point4& x, const PayoffParams& params) {
  const auto [p1, p2, p3, p4] = x;
  const double B = params.benefit();
  const double C = params.cost();
  const double A = field_denominator(x);
  if (!(std::abs(A) >= 1e-14)) throw MathError("field denominator vanishes");

  // Shared bracket of the p1 and p3 components.
  const double br = B * (p2 - p4) * (-p1 * p4 + p1 + p2 * (p3 - 1) - p3 + p4) + B * (p2 - p1) +
                    C * (p4 * (-2 * p1 * p2 + 2 * p2 * p3 + p2 + 1) + (p2 - 1) * (p1 * p2 - p2 * p3 - 1) +
                         p4 * p4 * (p1 - p3 - 1));
  const double b2 = B * (p3 * (p1 * p2 - p2 * p3 - 1) + p1 * p4 * (p3 - p1) + p4) +
                    C * (p1 * p1 * (p2 - p4 - 1) + p1 * p3 * (-2 * p2 + 2 * p4 + 1) + p3 * (p3 + 1) * (p2 - p4) - p2 +
                         p4 + 1);
  const double b4 = B * ((p1 * p1 - 1) * p4 - p1 * p3 * (p2 + p4) + p2 * p3 * p3 + p3) +
                    C * (p1 * p1 * (-p2 + p4 + 1) + p1 * p3 * (2 * p2 - 2 * p4 - 1) - p3 * (p3 + 1) * (p2 - p4) + p2 -
                         p4 - 1);
  return {p3 * p4 * br / A, (1 - p1) * p4 * b2 / A, -(p1 - 1) * p4 * br / A, (1 - p1) * (p2 - 1) * b4 / A};
}

InvariantPair invariants(std::span<const double> x) {
  if (x.size() != 4) throw std::invalid_argument("invariants are defined for memory 1");
  return {(x[0] - 1) * (x[0] - 1) + x[2] * x[2], (x[1] - 1) * (x[1] - 1) + x[3] * x[3]};
}

std::vector<double> reversal(std::span<const double> v) { return {v.rbegin(), v.rend()}; }

std::vector<double> time_reversal_image(std::span<const double> x) {
  std::vector<double> out = reversal(x);
  for (double& v : out) v = 1.0 - v;
  return out;
}

OdeRhs make_field(const PayoffParams& params, int memory, FieldMethod method) {
  if (method == FieldMethod::automatic) method = memory == 1 ? FieldMethod::closed_form : FieldMethod::numeric;
  if (method == FieldMethod::closed_form) {
    if (memory != 1) throw std::invalid_argument("closed-form field is memory 1 only");
    return [params](const OdeState& x, OdeState& d) {
      const Point4 v = field_closed_form({x[0], x[1], x[2], x[3]}, params);
      d.assign(v.begin(), v.end());
    };
  }
  return [params](const OdeState& x, OdeState& d) { d = field_numeric(x, params); };
}

Trajectory integrate(std::span<const double> x0, const PayoffParams& params, const IntegrateOptions& opts) {
  const int memory = memory_for_size(x0.size());
  if (memory == 0) throw std::invalid_argument("strategy length must be 4^N");
  const double lo = opts.boundary_margin;
  const double hi = 1.0 - opts.boundary_margin;
  for (double v : x0) {
    if (!(v > 0.0 && v < 1.0)) throw std::invalid_argument("initial state must be interior");
  }
  OdeOptions ode;
  ode.t_end = opts.t_end;
  ode.dt = opts.dt;
  ode.method = opts.method;
  ode.record_every = opts.record_every;
  auto guard = [lo, hi](const OdeState& x) {
    return std::all_of(x.begin(), x.end(), [lo, hi](double v) { return v >= lo && v <= hi; });
  };
  OdeResult r = integrate_ode(make_field(params, memory, opts.field), OdeState(x0.begin(), x0.end()), ode, guard);
  return Trajectory{std::move(r.times), std::move(r.states), r.status, std::move(r.message)};
}

std::string_view to_string(FamilyLocation loc) noexcept {
  switch (loc) {
    case FamilyLocation::interior:
      return "interior";
    case FamilyLocation::boundary:
      return "boundary";
    case FamilyLocation::exterior:
      return "exterior";
  }
  return "unknown";
}

Point4 plane_point(double p2, double p4, const PayoffParams& params) {
  const double B = params.benefit();
  const double C = params.cost();
  return {((B - C) * p2 + C * (p4 + 1)) / B, p2, (C * (1 - p2) + p4 * (B + C)) / B, p4};
}

std::vector<EquilibriumFamily> equilibrium_families(const PayoffParams& params) {
  const double B = params.benefit();
  const double C = params.cost();
  std::vector<EquilibriumFamily> out;

  out.push_back({"p1=1", FamilyLocation::boundary, {"p2", "p4"}, [B, C](std::span<const double> a) {
                   const double p2 = a[0], p4 = a[1];
                   const double p3 = (p2 - 1) * (B - C) * (p2 - p4 - 1) /
                                     (B * (p2 - 1) * (p2 - p4) - C * (-2 * p2 * p4 + (p2 - 1) * p2 + p4 * p4));
                   return Point4{1.0, p2, p3, p4};
                 }});
  out.push_back({"plane", FamilyLocation::interior, {"p2", "p4"}, [params](std::span<const double> a) {
                   return plane_point(a[0], a[1], params);
                 }});
  out.push_back({"p4=0", FamilyLocation::boundary, {"p1", "p3"}, [B, C](std::span<const double> a) {
                   const double p1 = a[0], p3 = a[1];
                   const double p2 = (B * p3 + C * (p1 * p1 - p1 * p3 - 1)) /
                                     (B * p3 * (p1 - p3) + C * ((p1 - p3) * (p1 - p3) + p3 - 1));
                   return Point4{p1, p2, p3, 0.0};
                 }});
  out.push_back({"p1=Cp4/B+1", FamilyLocation::exterior, {"p4"}, [B, C](std::span<const double> a) {
                   const double p4 = a[0];
                   return Point4{C * p4 / B + 1, 1.0, p4 * (B + C) / B, p4};
                 }});
  out.push_back({"p3=0", FamilyLocation::boundary, {"p1"}, [B, C](std::span<const double> a) {
                   const double p1 = a[0];
                   return Point4{p1, C * (p1 - 1) / B + p1, 0.0, C * (p1 - 1) / B};
                 }});
  return out;
}

std::string_view to_string(EquilibriumKind kind) noexcept {
  switch (kind) {
    case EquilibriumKind::degenerate_saddle:
      return "degenerate-saddle";
    case EquilibriumKind::degenerate_source:
      return "degenerate-source";
    case EquilibriumKind::boundary:
      return "boundary";
    case EquilibriumKind::other:
      return "other";
  }
  return "unknown";
}

std::array<std::array<double, 4>, 4> jacobian(const Point4& x, const PayoffParams& params, double step) {
  // Central differences at h and h/2, combined by one Richardson step.
  auto central = [&](int j, double h) {
    Point4 up = x, down = x;
    up[j] += h;
    down[j] -= h;
    const Point4 fu = field_closed_form(up, params);
    const Point4 fd = field_closed_form(down, params);
    Point4 d;
    for (int i = 0; i < 4; ++i) d[i] = (fu[i] - fd[i]) / (2.0 * h);
    return d;
  };
  std::array<std::array<double, 4>, 4> jac{};
  for (int j = 0; j < 4; ++j) {
    const Point4 coarse = central(j, step);
    const Point4 fine = central(j, step / 2);
    for (int i = 0; i < 4; ++i) jac[i][j] = (4.0 * fine[i] - coarse[i]) / 3.0;
  }
  return jac;
}

EquilibriumPoint classify_equilibrium(const Point4& x, const PayoffParams& params) {
  const Point4 f = field_closed_form(x, params);
  const double norm = std::sqrt(f[0] * f[0] + f[1] * f[1] + f[2] * f[2] + f[3] * f[3]);
  if (!(norm < 1e-8)) throw MathError("not an equilibrium");

  const auto jac = jacobian(x, params);
  Eigen::Matrix4d m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = jac[i][j];
  const Eigen::Vector4cd ev = Eigen::EigenSolver<Eigen::Matrix4d>(m, false).eigenvalues();

  EquilibriumPoint out{};
  out.x = x;
  out.field_norm = norm;
  for (int i = 0; i < 4; ++i) out.eigenvalues[i] = ev(i);
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
            [](const auto& a, const auto& b) { return a.real() > b.real(); });

  std::vector<std::complex<double>> nonzero;
  for (const auto& l : out.eigenvalues) {
    if (std::abs(l) < 1e-8) {
      ++out.zero_eigenvalues;
    } else {
      nonzero.push_back(l);
    }
  }

  const bool on_boundary = std::any_of(x.begin(), x.end(), [](double v) { return v <= 1e-12 || v >= 1 - 1e-12; });
  out.kind = EquilibriumKind::other;
  if (out.zero_eigenvalues == 2) {
    out.lambda1 = nonzero[0];
    out.lambda2 = nonzero[1];
    const bool real = std::abs(out.lambda1.imag()) < 1e-12 && std::abs(out.lambda2.imag()) < 1e-12;
    if (real && out.lambda1.real() > 0 && out.lambda2.real() > 0) out.kind = EquilibriumKind::degenerate_source;
    if (real && out.lambda1.real() > 0 && out.lambda2.real() < 0) out.kind = EquilibriumKind::degenerate_saddle;
  }
  if (on_boundary) out.kind = EquilibriumKind::boundary;
  return out;
}

std::pair<std::complex<double>, std::complex<double>> plane_eigenvalues(double p2, double p4, double c) {
  const double F = 2 * (c - 1) * (c - 1) * (c + 1) * std::pow(p2 - p4 - 1, 5) * (p2 - p4 + 1);
  const double s0 = c * (p2 - 1) * (p2 - 1) * p4 * (c * c - 2 * c * p2 - 3) +
                    (c - 1) * std::pow(p2 - 1, 3) * (-c * c + c + p2 + 1) -
                    std::pow(p4, 3) * (c * (c * (c + 6 * p2 - 2) + 4 * p2 + 1) + 2) +
                    c * (p2 - 1) * p4 * p4 * (c * (c + 6 * p2 - 2) + 3) + (c + 1) * (2 * c + 1) * std::pow(p4, 4);
  const double s = s0 * s0 - 8 * c * (c * c - 1) * p4 * (p2 - p4 + 1) * std::pow(-p2 + p4 + 1, 2) *
                                 ((c - 1) * (p2 - 1) - c * p4) *
                                 (c * ((p2 - 1) * (p2 - 1) - p4 * p4) - 2 * (p2 - 1) * p4);
  const double t = 2 * c * c * (p2 - p4 - 1) *
                   (p2 * p2 * (p4 - 1) - 2 * p2 * (p4 * p4 + p4 - 1) + std::pow(p4, 3) + p4 - 1);
  const double r = std::pow(c, 3) * std::pow(-p2 + p4 + 1, 2) * (p2 + p4 - 1) -
                   c * (-(4 * p2 + 1) * std::pow(p4, 3) + 3 * (p2 - 1) * p4 * p4 - 3 * (p2 - 1) * (p2 - 1) * p4 +
                        std::pow(p2 - 1, 3) * p2 + 3 * std::pow(p4, 4)) +
                   std::pow(p2, 4) - 2 * std::pow(p2, 3) + 2 * p2 - std::pow(p4, 4) + 2 * std::pow(p4, 3) - 1;
  const std::complex<double> root = std::sqrt(std::complex<double>(s, 0.0));
  return {-(t + root + r) / F, (-t + root - r) / F};
}

}  // namespace altpd
