#pragma once

#include "smcsim/controllers.hpp"
#include "smcsim/motor.hpp"
#include "smcsim/scenario.hpp"
#include "smcsim/trace.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace smcsim {

enum class IntegrationMethod { euler, rk4 };

struct SimConfig {
  double dt_plant = 1e-4;
  double dt_control = 1e-3;
  IntegrationMethod method = IntegrationMethod::rk4;

  void validate(double t_end) const {
    if (!(dt_plant > 0.0 && dt_plant <= dt_control && dt_control <= t_end))
      throw std::domain_error("SimConfig: need 0 < dt_plant <= dt_control <= t_end");
    const double ratio = dt_control / dt_plant;
    if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
      throw std::domain_error("SimConfig: dt_control must be an integer multiple of dt_plant");
  }

  long substeps() const { return static_cast<long>(std::llround(dt_control / dt_plant)); }
};

struct SimulationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Forward Euler step with u, c_r frozen over the step.
inline MotorState step_euler(const MotorState& x, double u, double c_r,
                             const MotorParams& p, double dt) {
  if (!(dt > 0.0)) throw std::domain_error("step_euler: dt must be > 0");
  const MotorState d = derivative(x, u, c_r, p);
  MotorState next{x.i + dt * d.i, x.omega + dt * d.omega};
  if (!next.finite()) throw SimulationError("step_euler: non-finite state after step");
  return next;
}

/// Classical fourth-order Runge-Kutta step with u, c_r frozen over the step.
inline MotorState step_rk4(const MotorState& x, double u, double c_r,
                           const MotorParams& p, double dt) {
  if (!(dt > 0.0)) throw std::domain_error("step_rk4: dt must be > 0");
  const auto axpy = [](const MotorState& a, double h, const MotorState& d) {
    return MotorState{a.i + h * d.i, a.omega + h * d.omega};
  };
  const MotorState k1 = derivative(x, u, c_r, p);
  const MotorState k2 = derivative(axpy(x, 0.5 * dt, k1), u, c_r, p);
  const MotorState k3 = derivative(axpy(x, 0.5 * dt, k2), u, c_r, p);
  const MotorState k4 = derivative(axpy(x, dt, k3), u, c_r, p);
  MotorState next{x.i + dt / 6.0 * (k1.i + 2.0 * k2.i + 2.0 * k3.i + k4.i),
                  x.omega + dt / 6.0 * (k1.omega + 2.0 * k2.omega + 2.0 * k3.omega + k4.omega)};
  if (!next.finite()) throw SimulationError("step_rk4: non-finite state after step");
  return next;
}

/// Control callback for the generic loop: (t, setpoint state, measured state)
/// -> (u before saturation, u_eq, s).
struct ControlDecision {
  double u = 0.0;
  double u_eq = 0.0;
  double s = 0.0;
};
using ControlFn = std::function<ControlDecision(double t, const MotorState& x_d, const MotorState& x)>;

/// Sampled-data closed loop: the controller runs every dt_control, its
/// output is saturated to +-u_max and held (zero-order hold) while the
/// plant integrates at dt_plant. One trace row per control instant.
SimulationTrace simulate_loop(const ControlFn& control, const Scenario& scenario,
                              const MotorParams& params, const SimConfig& cfg);

/// Closed loop for one of the two concrete controllers.
SimulationTrace simulate(Controller controller, const Scenario& scenario,
                         const MotorParams& params, const SimConfig& cfg);

} // namespace smcsim
