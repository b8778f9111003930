#pragma once

#include "smcsim/motor.hpp"
#include "smcsim/trace.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace smcsim {

enum class DisturbanceKind { none, load_step, load_pulse, friction_step };

/// Piecewise-constant disturbance: a load torque on the shaft (load_*)
/// or an additive viscous friction term (friction_step).
struct DisturbanceProfile {
  DisturbanceKind kind = DisturbanceKind::none;
  double magnitude = 0.0; ///< N m for load kinds, N m s for friction_step
  double t_on = 0.0;
  double t_off = 0.0;

  void validate(double t_end) const {
    if (kind == DisturbanceKind::none) return;
    if (!(magnitude >= 0.0)) throw std::domain_error("DisturbanceProfile: magnitude must be >= 0");
    if (!(0.0 <= t_on && t_on <= t_off && t_off <= t_end))
      throw std::domain_error("DisturbanceProfile: need 0 <= t_on <= t_off <= t_end");
  }
};

struct DisturbanceValue {
  double c_r = 0.0;     ///< load torque [N m]
  double delta_f = 0.0; ///< additive viscous friction [N m s]
};

/// Routes magnitude to the load channel for load kinds and to the friction
/// channel for friction_step. Steps stay on from t_on; pulses release at t_off.
inline DisturbanceValue disturbance_at(const DisturbanceProfile& p, double t) {
  if (!(t >= 0.0)) throw std::domain_error("disturbance_at: t must be >= 0");
  DisturbanceValue v;
  switch (p.kind) {
    case DisturbanceKind::none:
      break;
    case DisturbanceKind::load_step:
      if (t >= p.t_on) v.c_r = p.magnitude;
      break;
    case DisturbanceKind::load_pulse:
      if (t >= p.t_on && t < p.t_off) v.c_r = p.magnitude;
      break;
    case DisturbanceKind::friction_step:
      if (t >= p.t_on) v.delta_f = p.magnitude;
      break;
  }
  return v;
}

/// Setpoint command on the bench's volt scale: 1 V corresponds to 660 RPM.
inline double setpoint_to_speed(double volts) {
  if (!(volts >= 0.0)) throw std::domain_error("setpoint_to_speed: volts must be >= 0");
  return rpm_to_rad_per_sec(660.0 * volts);
}

struct Scenario {
  double setpoint_volts = 0.05;
  double t_end = 20.0;
  DisturbanceProfile disturbance;
  MotorState initial_state;

  void validate() const {
    if (!(t_end > 0.0)) throw std::domain_error("Scenario: t_end must be > 0");
    if (!(setpoint_volts >= 0.0)) throw std::domain_error("Scenario: setpoint_volts must be >= 0");
    if (!initial_state.finite()) throw std::domain_error("Scenario: non-finite initial state");
    disturbance.validate(t_end);
  }

  double setpoint_speed() const { return setpoint_to_speed(setpoint_volts); }

  /// End of the undisturbed window at the start of the run.
  double pre_disturbance_end() const {
    return disturbance.kind == DisturbanceKind::none ? t_end : disturbance.t_on;
  }
};

struct Metrics {
  double settling_time = std::numeric_limits<double>::infinity(); ///< s; +inf if never settled
  double overshoot_pct = 0.0;
  double dist_drop_pct = 0.0;
  double recovery_time = 0.0;
  double control_rms = 0.0;
  double control_peak = 0.0;
  long switch_count = 0;
  double switch_rate = 0.0; ///< Hz
};

inline constexpr double kDefaultSettlingBandPct = 2.0;

/// Earliest time after which |omega - target| stays within band_pct of the
/// target for the rest of the window [start, window_end]. Returns +inf if
/// the trace never settles.
double settling_time(const SimulationTrace& trace, double target,
                     double band_pct = kDefaultSettlingBandPct,
                     double window_end = std::numeric_limits<double>::infinity());

struct DropResult {
  double drop_pct = 0.0;
  double recovery_time = 0.0; ///< time from t_on back into the band; +inf if never
};

/// Percentage speed drop after a disturbance applied at t_on, measured
/// against the minimum speed over [t_on, end of trace], and the time from
/// t_on until re-entry into the settling band. Requires the speed to be
/// settled before t_on.
DropResult disturbance_drop(const SimulationTrace& trace, double target, double t_on,
                            double band_pct = kDefaultSettlingBandPct);

struct ControlEffort {
  double rms = 0.0;
  double peak = 0.0;
};

ControlEffort control_effort(const SimulationTrace& trace);

struct ChatteringMetrics {
  long switch_count = 0;
  double switch_rate = 0.0;
};

/// Counts sign changes of the switching component u - u_eq.
ChatteringMetrics chattering_metrics(const SimulationTrace& trace);

} // namespace smcsim
