#include "smcsim/scenario.hpp"

#include "smcsim/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace smcsim {

double settling_time(const SimulationTrace& trace, double target, double band_pct,
                     double window_end) {
  if (trace.empty()) throw std::invalid_argument("settling_time: empty trace");
  if (!(target > 0.0)) throw std::invalid_argument("settling_time: target must be > 0");
  const double band = band_pct / 100.0 * target;

  double settled_at = std::numeric_limits<double>::infinity();
  for (const TraceRow& row : trace.rows) {
    if (row.t >= window_end) break; // the window is [start, window_end)
    if (std::abs(row.omega - target) <= band) {
      if (!std::isfinite(settled_at)) settled_at = row.t;
    } else {
      settled_at = std::numeric_limits<double>::infinity();
    }
  }
  return settled_at;
}

DropResult disturbance_drop(const SimulationTrace& trace, double target, double t_on,
                            double band_pct) {
  if (trace.empty()) throw std::invalid_argument("disturbance_drop: empty trace");
  if (!(t_on >= trace.rows.front().t && t_on <= trace.rows.back().t))
    throw std::invalid_argument("disturbance_drop: t_on outside trace");
  const double settle = settling_time(trace, target, band_pct, t_on);
  if (!(settle < t_on))
    throw std::invalid_argument("disturbance_drop: speed not settled before the disturbance");

  const double band = band_pct / 100.0 * target;
  double min_omega = target;
  DropResult res;
  res.recovery_time = std::numeric_limits<double>::infinity();
  bool out_of_band = false;
  for (const TraceRow& row : trace.rows) {
    if (row.t < t_on) continue;
    min_omega = std::min(min_omega, row.omega);
    if (std::abs(row.omega - target) > band) {
      out_of_band = true;
      res.recovery_time = std::numeric_limits<double>::infinity();
    } else if (std::isinf(res.recovery_time)) {
      res.recovery_time = row.t - t_on;
    }
  }
  if (!out_of_band) res.recovery_time = 0.0;
  res.drop_pct = 100.0 * (target - min_omega) / target;
  return res;
}

ControlEffort control_effort(const SimulationTrace& trace) {
  if (trace.empty()) throw std::invalid_argument("control_effort: empty trace");
  double sum_sq = 0.0;
  double peak = 0.0;
  for (const TraceRow& row : trace.rows) {
    sum_sq += row.u * row.u;
    peak = std::max(peak, std::abs(row.u));
  }
  return {std::sqrt(sum_sq / static_cast<double>(trace.size())), peak};
}

ChatteringMetrics chattering_metrics(const SimulationTrace& trace) {
  if (trace.empty()) throw std::invalid_argument("chattering_metrics: empty trace");
  long count = 0;
  int prev = 0;
  for (const TraceRow& row : trace.rows) {
    const int s = sign_of(row.u - row.u_eq);
    if (s != 0 && prev != 0 && s != prev) ++count;
    if (s != 0) prev = s;
  }
  const double dur = trace.duration();
  return {count, dur > 0.0 ? static_cast<double>(count) / dur : 0.0};
}

ReachingReport check_reaching(const SimulationTrace& trace, double phi,
                              std::optional<double> tolerance, double window_end) {
  if (trace.size() < 3) throw std::invalid_argument("check_reaching: need at least 3 samples");

  double max_v = 0.0;
  for (const TraceRow& row : trace.rows) max_v = std::max(max_v, row.v_lyap);
  const double tol = tolerance.value_or(1e-9 * max_v);

  ReachingReport report;
  for (std::size_t k = 1; k + 1 < trace.size(); ++k) {
    const TraceRow& row = trace.rows[k];
    if (row.t > window_end) break;
    if (std::abs(row.s) <= phi) continue;
    const double vdot = (trace.rows[k + 1].v_lyap - trace.rows[k - 1].v_lyap) /
                        (trace.rows[k + 1].t - trace.rows[k - 1].t);
    report.max_vdot_outside_layer = std::max(report.max_vdot_outside_layer, vdot);
    if (vdot >= tol) report.violation_times.push_back(row.t);
  }
  return report;
}

} // namespace smcsim
