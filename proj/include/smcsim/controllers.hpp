#pragma once

#include "smcsim/motor.hpp"
#include "smcsim/trace.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

namespace smcsim {

/// Three-valued sign; sign(0) = 0 avoids limit cycling on an exact
/// surface crossing in discrete time.
inline int sign_of(double x) {
  if (!std::isfinite(x)) throw std::domain_error("sign_of: non-finite input");
  return (x > 0.0) - (x < 0.0);
}

inline double lyapunov_value(double s) {
  if (!std::isfinite(s)) throw std::domain_error("lyapunov_value: non-finite input");
  return 0.5 * s * s;
}

/// Sliding surface s = c . (x_d - x) with switching gain kappa and
/// boundary-layer half-width phi (phi = 0 selects pure sign switching).
class SlidingSurface {
public:
  /// Validating constructor; requires c1 != 0 (so c.B != 0 for the motor's
  /// B = [1/L, 0]) and kappa * c1 > 0, the reaching condition for this
  /// sign convention.
  SlidingSurface(const Eigen::RowVector2d& c, double kappa, double phi) : c_(c), kappa_(kappa), phi_(phi) {
    if (c[0] == 0.0) throw std::invalid_argument("SlidingSurface: c1 = 0 makes c.B singular");
    if (!(kappa * c[0] > 0.0)) throw std::invalid_argument("SlidingSurface: kappa * (c.B) must be > 0");
    if (!(phi >= 0.0)) throw std::invalid_argument("SlidingSurface: phi must be >= 0");
  }

  /// Bypasses the stability checks; used to demonstrate reaching-condition
  /// violations on purpose.
  static SlidingSurface unchecked(const Eigen::RowVector2d& c, double kappa, double phi) {
    SlidingSurface s({1.0, 0.0}, 1.0, 0.0);
    s.c_ = c;
    s.kappa_ = kappa;
    s.phi_ = phi;
    return s;
  }

  const Eigen::RowVector2d& c() const { return c_; }
  double kappa() const { return kappa_; }
  double phi() const { return phi_; }

private:
  Eigen::RowVector2d c_;
  double kappa_;
  double phi_;
};

/// s = c1 (i_d - i) + c2 (w_d - w).
inline double sliding_value(const SlidingSurface& surf, const MotorState& x_d, const MotorState& x) {
  return surf.c().dot(x_d.vec() - x.vec());
}

/// Control holding the state on the surface for the nominal plant,
/// u_eq = -(c.B)^-1 (c.A x); solves ds/dt = -c (A x + B u) = 0.
inline double equivalent_control(const SlidingSurface& surf, const StateMatrices& m, const MotorState& x) {
  const double cB = surf.c().dot(m.B);
  return -surf.c().dot(m.A * x.vec()) / cB;
}

struct SmcOutput {
  double u = 0.0;
  double u_eq = 0.0;
  double s = 0.0;
};

/// Global control u = u_eq + kappa * switch(s), where switch is sign(s)
/// for phi = 0 and the saturation clamp(s/phi) inside the boundary layer.
/// Then ds/dt = -kappa (c.B) switch(s), so V' = s ds/dt <= 0 whenever
/// kappa (c.B) > 0.
inline SmcOutput smc_control(const SlidingSurface& surf, const StateMatrices& m,
                             const MotorState& x_d, const MotorState& x) {
  SmcOutput out;
  out.s = sliding_value(surf, x_d, x);
  out.u_eq = equivalent_control(surf, m, x);
  const double sw = surf.phi() > 0.0 ? std::clamp(out.s / surf.phi(), -1.0, 1.0)
                                     : static_cast<double>(sign_of(out.s));
  out.u = out.u_eq + surf.kappa() * sw;
  return out;
}

struct PidConfig {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
  double u_limit = 24.0;
  double tf_d = 0.0; ///< derivative filter time constant [s]

  void validate() const {
    if (!(kp >= 0.0 && ki >= 0.0 && kd >= 0.0))
      throw std::domain_error("PidConfig: gains must be >= 0");
    if (!(u_limit > 0.0)) throw std::domain_error("PidConfig: u_limit must be > 0");
    if (!(tf_d >= 0.0)) throw std::domain_error("PidConfig: tf_d must be >= 0");
  }
};

struct PidState {
  double integral = 0.0;
  double deriv_filt = 0.0;
  double prev_error = 0.0;
  bool primed = false; ///< false until the first update seeds prev_error
};

struct PidOutput {
  double u = 0.0;
  PidState state;
};

/// One PID step: rectangular integration, first-order-filtered derivative,
/// output clamp with conditional anti-windup (the accumulator is frozen
/// while the output is saturated in the direction of the error).
inline PidOutput pid_update(const PidConfig& cfg, const PidState& st, double error, double dt) {
  cfg.validate();
  if (!(dt > 0.0)) throw std::domain_error("pid_update: dt must be > 0");

  PidState next = st;
  next.integral = st.integral + error * dt;

  const double raw = st.primed ? (error - st.prev_error) / dt : 0.0;
  next.deriv_filt = cfg.tf_d > 0.0
                        ? st.deriv_filt + dt / (cfg.tf_d + dt) * (raw - st.deriv_filt)
                        : raw;
  next.prev_error = error;
  next.primed = true;

  const double unsat = cfg.kp * error + cfg.ki * next.integral + cfg.kd * next.deriv_filt;
  const double u = std::clamp(unsat, -cfg.u_limit, cfg.u_limit);
  if ((unsat > cfg.u_limit && error > 0.0) || (unsat < -cfg.u_limit && error < 0.0))
    next.integral = st.integral;
  return {u, next};
}

struct PidController {
  PidConfig cfg;
  PidState state;
};

struct SmcController {
  SlidingSurface surface;
  StateMatrices matrices;
};

using Controller = std::variant<PidController, SmcController>;

struct ReachingReport {
  std::vector<double> violation_times;
  double max_vdot_outside_layer = -std::numeric_limits<double>::infinity();

  bool ok() const { return violation_times.empty(); }
};

/// Estimates V' by central differences on the v_lyap column and flags
/// every interior sample outside the boundary layer (|s| > phi) where
/// V' >= tolerance. Default tolerance is 1e-9 * max V; pass 0 for a
/// strict-decrease check.
ReachingReport check_reaching(const SimulationTrace& trace, double phi,
                              std::optional<double> tolerance = std::nullopt,
                              double window_end = std::numeric_limits<double>::infinity());

} // namespace smcsim
