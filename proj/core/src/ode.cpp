#include "altpd/ode.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

#include "altpd/errors.hpp"

namespace altpd {

namespace odeint = boost::numeric::odeint;

std::string_view to_string(Method m) noexcept { return m == Method::rk4 ? "rk4" : "rk45"; }

std::string_view to_string(IntegrationStatus s) noexcept {
  switch (s) {
    case IntegrationStatus::completed:
      return "completed";
    case IntegrationStatus::boundary:
      return "boundary";
    case IntegrationStatus::singular:
      return "singular";
  }
  return "unknown";
}

Method method_from_string(std::string_view name) {
  if (name == "rk4") return Method::rk4;
  if (name == "rk45" || name == "dopri5") return Method::rk45;
  throw std::invalid_argument("unknown integration method '" + std::string(name) + "'");
}

namespace {

class Recorder {
 public:
  Recorder(OdeResult& out, int every) : out_(out), every_(every < 1 ? 1 : every) {}

  void push(double t, const OdeState& x, bool force = false) {
    if (force || count_ % every_ == 0) {
      out_.times.push_back(t);
      out_.states.push_back(x);
      last_recorded_ = count_;
    }
    ++count_;
  }

  // Makes sure the last accepted state is part of the output.
  void finish(double t, const OdeState& x) {
    if (last_recorded_ != count_ - 1) {
      out_.times.push_back(t);
      out_.states.push_back(x);
    }
  }

 private:
  OdeResult& out_;
  int every_;
  long count_ = 0;
  long last_recorded_ = -1;
};

// Remaining signed time, zero once we are within roundoff of the end.
double remaining(double t, double t_end) {
  const double r = t_end - t;
  return std::abs(r) <= 1e-12 * std::max(1.0, std::abs(t_end)) ? 0.0 : r;
}

}  // namespace

OdeResult integrate_ode(const OdeRhs& rhs, const OdeState& x0, const OdeOptions& opts, const OdeGuard& guard) {
  if (!(opts.dt > 0.0) || !std::isfinite(opts.t_end)) throw std::invalid_argument("dt must be positive and T finite");

  OdeResult out;
  Recorder rec(out, opts.record_every);
  OdeState x = x0;
  double t = 0.0;
  const double direction = opts.t_end < 0.0 ? -1.0 : 1.0;

  if (guard && !guard(x)) {
    out.status = IntegrationStatus::boundary;
    out.message = "initial state outside the admissible region";
    rec.push(t, x, true);
    return out;
  }
  rec.push(t, x, true);

  auto system = [&rhs](const OdeState& s, OdeState& d, double /*t*/) { rhs(s, d); };

  try {
    if (opts.method == Method::rk4) {
      odeint::runge_kutta4<OdeState> stepper;
      const long n_steps = static_cast<long>(std::ceil(std::abs(opts.t_end) / opts.dt - 1e-9));
      for (long i = 0; i < n_steps; ++i) {
        const double h = direction * std::min(opts.dt, std::abs(remaining(t, opts.t_end)));
        if (h == 0.0) break;
        OdeState next = x;
        stepper.do_step(system, next, t, h);
        ++out.steps;
        if (guard && !guard(next)) {
          out.status = IntegrationStatus::boundary;
          out.message = "state left the admissible region";
          break;
        }
        x = std::move(next);
        t = (i + 1 == n_steps) ? opts.t_end : t + h;
        rec.push(t, x);
      }
    } else {
      auto stepper = odeint::make_controlled(opts.abs_tol, opts.rel_tol, odeint::runge_kutta_dopri5<OdeState>());
      double h = direction * opts.dt;
      int rejections = 0;
      while (remaining(t, opts.t_end) != 0.0) {
        const double rem = remaining(t, opts.t_end);
        if (std::abs(h) > std::abs(rem)) h = rem;
        OdeState next = x;
        double t_next = t;
        const auto result = stepper.try_step(system, next, t_next, h);
        if (result == odeint::fail) {
          if (++rejections > 500) throw MathError("step size underflow");
          continue;
        }
        rejections = 0;
        ++out.steps;
        if (guard && !guard(next)) {
          out.status = IntegrationStatus::boundary;
          out.message = "state left the admissible region";
          break;
        }
        x = std::move(next);
        t = remaining(t_next, opts.t_end) == 0.0 ? opts.t_end : t_next;
        rec.push(t, x);
      }
    }
  } catch (const MathError& e) {
    out.status = IntegrationStatus::singular;
    out.message = e.what();
  }
  rec.finish(t, x);
  return out;
}

}  // namespace altpd
