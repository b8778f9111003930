#include "smcsim/harness.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace smcsim {

namespace {

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

Metrics compute_metrics(const SimulationTrace& trace, const Scenario& scenario) {
  Metrics m;
  const double target = scenario.setpoint_speed();
  const double window = scenario.pre_disturbance_end();
  if (target > 0.0) {
    m.settling_time = settling_time(trace, target, kDefaultSettlingBandPct, window);
    double peak_omega = 0.0;
    for (const TraceRow& row : trace.rows) {
      if (row.t > window) break;
      peak_omega = std::max(peak_omega, row.omega);
    }
    m.overshoot_pct = std::max(0.0, 100.0 * (peak_omega - target) / target);
    if (scenario.disturbance.kind != DisturbanceKind::none &&
        std::isfinite(m.settling_time) && m.settling_time < scenario.disturbance.t_on) {
      const DropResult drop = disturbance_drop(trace, target, scenario.disturbance.t_on);
      m.dist_drop_pct = drop.drop_pct;
      m.recovery_time = drop.recovery_time;
    }
  }
  const ControlEffort effort = control_effort(trace);
  m.control_rms = effort.rms;
  m.control_peak = effort.peak;
  const ChatteringMetrics chat = chattering_metrics(trace);
  m.switch_count = chat.switch_count;
  m.switch_rate = chat.switch_rate;
  return m;
}

bool shared_blocks_differ(const ExperimentConfig& a, const ExperimentConfig& b) {
  const auto& ma = a.motor;
  const auto& mb = b.motor;
  if (ma.R != mb.R || ma.L != mb.L || ma.J != mb.J || ma.f != mb.f || ma.k != mb.k ||
      ma.u_max != mb.u_max)
    return true;
  if (a.sim.dt_plant != b.sim.dt_plant || a.sim.dt_control != b.sim.dt_control ||
      a.sim.method != b.sim.method)
    return true;
  const auto& sa = a.scenario;
  const auto& sb = b.scenario;
  return sa.setpoint_volts != sb.setpoint_volts || sa.t_end != sb.t_end ||
         sa.disturbance.kind != sb.disturbance.kind ||
         sa.disturbance.magnitude != sb.disturbance.magnitude ||
         sa.disturbance.t_on != sb.disturbance.t_on ||
         sa.disturbance.t_off != sb.disturbance.t_off ||
         sa.initial_state.i != sb.initial_state.i ||
         sa.initial_state.omega != sb.initial_state.omega;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, bool allow_unstable) {
  cfg.validate();
  ExperimentResult result;
  if (cfg.controller == ControllerKind::pid) {
    result.trace = simulate(PidController{cfg.pid, {}}, cfg.scenario, cfg.motor, cfg.sim);
  } else {
    const SmcController smc{cfg.surface.build(allow_unstable), state_matrices(cfg.motor)};
    result.trace = simulate(smc, cfg.scenario, cfg.motor, cfg.sim);
    result.reaching = check_reaching(result.trace, cfg.surface.phi, std::nullopt,
                                     cfg.scenario.pre_disturbance_end());
  }
  result.metrics = compute_metrics(result.trace, cfg.scenario);
  return result;
}

std::string trace_to_csv(const SimulationTrace& trace) {
  std::ostringstream out;
  out << "t,setpoint_rpm,omega_rpm,current_a,u_v,u_eq_v,s,v_lyap,c_r_nm\n";
  for (const TraceRow& row : trace.rows) {
    out << fmt9(row.t) << ',' << fmt9(rad_per_sec_to_rpm(row.setpoint)) << ','
        << fmt9(rad_per_sec_to_rpm(row.omega)) << ',' << fmt9(row.i) << ',' << fmt9(row.u) << ','
        << fmt9(row.u_eq) << ',' << fmt9(row.s) << ',' << fmt9(row.v_lyap) << ','
        << fmt9(row.c_r) << '\n';
  }
  return out.str();
}

void emit_csv(const SimulationTrace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << trace_to_csv(trace);
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string ComparisonReport::to_text() const {
  std::ostringstream out;
  out << "PID vs SMC comparison\n";
  out << "=====================\n";
  if (!complete) {
    out << "INCOMPLETE: " << fault << "\n";
    return out.str();
  }
  const auto line = [&](const char* name, double a, double b) {
    out << name << ": pid = " << fmt9(a) << ", smc = " << fmt9(b) << "\n";
  };
  line("settling_time_s", pid.settling_time, smc.settling_time);
  line("overshoot_pct", pid.overshoot_pct, smc.overshoot_pct);
  line("dist_drop_pct", pid.dist_drop_pct, smc.dist_drop_pct);
  line("recovery_time_s", pid.recovery_time, smc.recovery_time);
  line("control_rms_v", pid.control_rms, smc.control_rms);
  line("control_peak_v", pid.control_peak, smc.control_peak);
  out << "switch_count: pid = " << pid.switch_count << ", smc = " << smc.switch_count << "\n";
  line("switch_rate_hz", pid.switch_rate, smc.switch_rate);
  out << "settling_ratio = " << fmt9(settling_ratio) << "\n";
  out << "drop_ratio = " << fmt9(drop_ratio) << "\n";
  out << "effort_ratio = " << fmt9(effort_ratio) << "\n";
  out << "settling_contrast (ratio >= 3): " << (settling_pass ? "PASS" : "FAIL") << "\n";
  out << "drop_contrast (pid >= 20%, smc <= 5%): " << (drop_pass ? "PASS" : "FAIL") << "\n";
  return out.str();
}

ComparisonReport compare(const ExperimentConfig& cfg_pid, const ExperimentConfig& cfg_smc,
                         const std::string& out_dir) {
  if (shared_blocks_differ(cfg_pid, cfg_smc))
    throw ConfigError("compare: motor, sim, and scenario blocks must match");

  ComparisonReport report;
  std::filesystem::create_directories(out_dir);
  try {
    const ExperimentResult pid_res = run_experiment(cfg_pid);
    const ExperimentResult smc_res = run_experiment(cfg_smc);
    emit_csv(pid_res.trace, out_dir + "/" + cfg_pid.output.base + "_pid.csv");
    emit_csv(smc_res.trace, out_dir + "/" + cfg_smc.output.base + "_smc.csv");
    if (!smc_res.ok()) {
      report.fault = "smc run violates the reaching condition";
      return report;
    }
    report.pid = pid_res.metrics;
    report.smc = smc_res.metrics;
    report.complete = true;
  } catch (const std::exception& e) {
    report.fault = e.what();
    return report;
  }

  const auto ratio = [](double a, double b) { return b > 0.0 ? a / b : 0.0; };
  report.settling_ratio = ratio(report.pid.settling_time, report.smc.settling_time);
  report.drop_ratio = ratio(report.pid.dist_drop_pct, report.smc.dist_drop_pct);
  report.effort_ratio = ratio(report.pid.control_rms, report.smc.control_rms);
  report.settling_pass = report.settling_ratio >= 3.0;
  report.drop_pass = report.pid.dist_drop_pct >= 20.0 && report.smc.dist_drop_pct <= 5.0;

  std::ofstream out(out_dir + "/report.txt", std::ios::binary);
  out << report.to_text();
  return report;
}

std::string plot_script(const std::string& csv_name) {
  std::ostringstream out;
  out << "set datafile separator ','\n";
  out << "set key autotitle columnhead\n";
  out << "set xlabel 't [s]'\n";
  out << "set multiplot layout 3,1\n";
  out << "plot '" << csv_name << "' using 1:2 with lines, '' using 1:3 with lines\n";
  out << "plot '" << csv_name << "' using 1:5 with lines, '' using 1:6 with lines\n";
  out << "plot '" << csv_name << "' using 1:7 with lines\n";
  out << "unset multiplot\n";
  return out.str();
}

} // namespace smcsim
