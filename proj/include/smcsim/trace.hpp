#pragma once

#include <vector>

namespace smcsim {

/// One sample per controller instant.
struct TraceRow {
  double t = 0.0;        ///< [s]
  double setpoint = 0.0; ///< [rad/s]
  double omega = 0.0;    ///< [rad/s]
  double i = 0.0;        ///< [A]
  double u = 0.0;        ///< applied armature voltage [V]
  double u_eq = 0.0;     ///< continuous (equivalent) control component [V]
  double s = 0.0;        ///< sliding value
  double v_lyap = 0.0;   ///< 0.5 s^2
  double c_r = 0.0;      ///< load torque at this instant [N m]
};

struct SimulationTrace {
  std::vector<TraceRow> rows;

  bool empty() const { return rows.empty(); }
  std::size_t size() const { return rows.size(); }
  double duration() const { return rows.empty() ? 0.0 : rows.back().t - rows.front().t; }
};

} // namespace smcsim
