#include "smcsim/simulate.hpp"

#include <cmath>
#include <string>

namespace smcsim {

namespace {

constexpr double kBlowupCurrent = 1e6;  // A
constexpr double kBlowupSpeed = 1e6;    // rad/s

void check_blowup(const MotorState& x, double t) {
  if (!x.finite() || std::abs(x.i) > kBlowupCurrent || std::abs(x.omega) > kBlowupSpeed)
    throw SimulationError("integration blowup at t = " + std::to_string(t) +
                          " (i = " + std::to_string(x.i) +
                          ", omega = " + std::to_string(x.omega) + ")");
}

} // namespace

SimulationTrace simulate_loop(const ControlFn& control, const Scenario& scenario,
                              const MotorParams& params, const SimConfig& cfg) {
  params.validate();
  scenario.validate();
  cfg.validate(scenario.t_end);

  const double omega_d = scenario.setpoint_speed();
  const MotorState x_d{steady_state_current(omega_d, 0.0, params), omega_d};

  const long n_control = static_cast<long>(std::llround(scenario.t_end / cfg.dt_control));
  const long n_sub = cfg.substeps();

  SimulationTrace trace;
  trace.rows.reserve(static_cast<std::size_t>(n_control) + 1);

  MotorState x = scenario.initial_state;
  for (long k = 0; k <= n_control; ++k) {
    const double t = static_cast<double>(k) * cfg.dt_control;
    const ControlDecision d = control(t, x_d, x);
    if (!std::isfinite(d.u)) throw SimulationError("controller fault: non-finite u at t = " + std::to_string(t));
    const double u = std::clamp(d.u, -params.u_max, params.u_max);

    TraceRow row;
    row.t = t;
    row.setpoint = omega_d;
    row.omega = x.omega;
    row.i = x.i;
    row.u = u;
    row.u_eq = d.u_eq;
    row.s = d.s;
    row.v_lyap = lyapunov_value(d.s);
    row.c_r = disturbance_at(scenario.disturbance, t).c_r;
    trace.rows.push_back(row);

    if (k == n_control) break;

    for (long j = 0; j < n_sub; ++j) {
      const double tj = t + static_cast<double>(j) * cfg.dt_plant;
      const DisturbanceValue dist = disturbance_at(scenario.disturbance, tj);
      MotorParams p = params;
      p.f += dist.delta_f;
      x = cfg.method == IntegrationMethod::rk4
              ? step_rk4(x, u, dist.c_r, p, cfg.dt_plant)
              : step_euler(x, u, dist.c_r, p, cfg.dt_plant);
      check_blowup(x, tj + cfg.dt_plant);
    }
  }
  return trace;
}

SimulationTrace simulate(Controller controller, const Scenario& scenario,
                         const MotorParams& params, const SimConfig& cfg) {
  if (auto* pid = std::get_if<PidController>(&controller)) {
    pid->state = PidState{};
    ControlFn fn = [pid, &cfg](double, const MotorState& x_d, const MotorState& x) {
      const PidOutput out = pid_update(pid->cfg, pid->state, x_d.omega - x.omega, cfg.dt_control);
      pid->state = out.state;
      // For PID the whole control is the continuous component.
      return ControlDecision{out.u, out.u, 0.0};
    };
    return simulate_loop(fn, scenario, params, cfg);
  }
  const auto& smc = std::get<SmcController>(controller);
  ControlFn fn = [&smc](double, const MotorState& x_d, const MotorState& x) {
    const SmcOutput out = smc_control(smc.surface, smc.matrices, x_d, x);
    return ControlDecision{out.u, out.u_eq, out.s};
  };
  return simulate_loop(fn, scenario, params, cfg);
}

} // namespace smcsim
