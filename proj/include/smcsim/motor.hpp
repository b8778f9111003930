#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smcsim {

inline double rad_per_sec_to_rpm(double w) { return w * 60.0 / (2.0 * std::numbers::pi); }
inline double rpm_to_rad_per_sec(double rpm) { return rpm * 2.0 * std::numbers::pi / 60.0; }

/// Physical constants of the permanent-magnet DC motor.
/// Defaults are the TY36A/EV bench values with a unit torque constant
/// and the 24 V bus as actuator limit.
struct MotorParams {
  double R = 5.5;      ///< armature resistance [ohm]
  double L = 0.0028;   ///< armature inductance [H]
  double J = 0.0163;   ///< rotor inertia [kg m^2]
  double f = 0.2;      ///< viscous friction [N m s]
  double k = 1.0;      ///< torque / back-EMF constant [N m / A]
  double u_max = 24.0; ///< armature voltage limit [V]

  void validate() const {
    if (!(R > 0.0) || !std::isfinite(R)) throw std::domain_error("MotorParams: R must be > 0");
    if (!(L > 0.0) || !std::isfinite(L)) throw std::domain_error("MotorParams: L must be > 0");
    if (!(J > 0.0) || !std::isfinite(J)) throw std::domain_error("MotorParams: J must be > 0");
    if (!(f >= 0.0) || !std::isfinite(f)) throw std::domain_error("MotorParams: f must be >= 0");
    if (!(k > 0.0) || !std::isfinite(k)) throw std::domain_error("MotorParams: k must be > 0");
    if (!(u_max > 0.0) || !std::isfinite(u_max)) throw std::domain_error("MotorParams: u_max must be > 0");
  }
};

/// Instantaneous plant state: armature current [A] and shaft speed [rad/s].
struct MotorState {
  double i = 0.0;
  double omega = 0.0;

  Eigen::Vector2d vec() const { return {i, omega}; }
  static MotorState from_vec(const Eigen::Vector2d& v) { return {v[0], v[1]}; }

  bool finite() const { return std::isfinite(i) && std::isfinite(omega); }
};

/// Linear state-space realization d/dt [i w] = A [i w] + B u, y = C_out [i w] + D u.
/// The load torque enters through E (per-unit c_r).
struct StateMatrices {
  Eigen::Matrix2d A;
  Eigen::Vector2d B;
  Eigen::RowVector2d C_out;
  double D = 0.0;
  Eigen::Vector2d E; ///< disturbance input column for c_r
};

/// Second-order transfer function coefficients, ascending powers of s.
/// den = [Rf + k^2, RJ + Lf, LJ], num = [k], dist_num = [R, L].
struct TransferFunction {
  Eigen::Vector3d den;
  double num = 0.0;
  Eigen::Vector2d dist_num;

  double dc_gain() const { return num / den[0]; }
  double disturbance_dc_gain() const { return dist_num[0] / den[0]; }
};

/// Continuous-time plant dynamics:
///   di/dt = (u - R i - k w) / L
///   dw/dt = (k i - f w - c_r) / J
/// Returns the derivative packed as a MotorState (A/s, rad/s^2).
inline MotorState derivative(const MotorState& x, double u, double c_r, const MotorParams& p) {
  p.validate();
  if (!x.finite() || !std::isfinite(u) || !std::isfinite(c_r))
    throw std::domain_error("derivative: non-finite input");
  return {(u - p.R * x.i - p.k * x.omega) / p.L,
          (p.k * x.i - p.f * x.omega - c_r) / p.J};
}

/// A(0,1) is -k/L: back-EMF opposes the supply voltage.
inline StateMatrices state_matrices(const MotorParams& p) {
  p.validate();
  StateMatrices m;
  m.A << -p.R / p.L, -p.k / p.L,
          p.k / p.J, -p.f / p.J;
  m.B << 1.0 / p.L, 0.0;
  m.C_out << 0.0, 1.0;
  m.D = 0.0;
  m.E << 0.0, -1.0 / p.J;
  return m;
}

inline TransferFunction transfer_function(const MotorParams& p) {
  p.validate();
  TransferFunction tf;
  tf.den << p.R * p.f + p.k * p.k, p.R * p.J + p.L * p.f, p.L * p.J;
  tf.num = p.k;
  tf.dist_num << p.R, p.L;
  return tf;
}

/// Analytic steady-state speed for constant input, the transfer function
/// evaluated at s = 0: w_ss = (k u - R c_r) / (R f + k^2).
inline double steady_state_speed(double u, double c_r, const MotorParams& p) {
  p.validate();
  return (p.k * u - p.R * c_r) / (p.R * p.f + p.k * p.k);
}

/// Steady-state current consistent with a speed w and load c_r.
inline double steady_state_current(double omega, double c_r, const MotorParams& p) {
  return (p.f * omega + c_r) / p.k;
}

} // namespace smcsim
