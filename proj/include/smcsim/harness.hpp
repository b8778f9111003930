#pragma once

#include "smcsim/config.hpp"
#include "smcsim/scenario.hpp"
#include "smcsim/simulate.hpp"
#include "smcsim/trace.hpp"

#include <optional>
#include <string>

namespace smcsim {

struct ExperimentResult {
  SimulationTrace trace;
  Metrics metrics;
  /// Present for SMC runs; evaluated over the pre-disturbance window.
  std::optional<ReachingReport> reaching;

  bool ok() const { return !reaching || reaching->ok(); }
};

/// Simulates the configured controller on the configured scenario and
/// computes the comparison metrics. For SMC the reaching condition is
/// checked over the nominal (pre-disturbance) window; violations mark
/// the run as failed.
ExperimentResult run_experiment(const ExperimentConfig& cfg, bool allow_unstable = false);

/// Writes the trace as CSV. Header:
///   t,setpoint_rpm,omega_rpm,current_a,u_v,u_eq_v,s,v_lyap,c_r_nm
/// Speeds are in RPM at this boundary; numbers carry 9 significant digits.
std::string trace_to_csv(const SimulationTrace& trace);
void emit_csv(const SimulationTrace& trace, const std::string& path);

struct ComparisonReport {
  Metrics pid;
  Metrics smc;
  bool complete = false;
  std::string fault; ///< non-empty when a run failed

  double settling_ratio = 0.0; ///< pid / smc
  double drop_ratio = 0.0;     ///< pid / smc
  double effort_ratio = 0.0;   ///< pid rms / smc rms

  bool settling_pass = false; ///< settling_ratio >= 3
  bool drop_pass = false;     ///< pid drop >= 20 %, smc drop <= 5 %

  std::string to_text() const;
};

/// Runs the PID and SMC configs (which must share motor, sim, and scenario
/// blocks), writes <base>.csv for each under out_dir, and builds the report.
ComparisonReport compare(const ExperimentConfig& cfg_pid, const ExperimentConfig& cfg_smc,
                         const std::string& out_dir);

/// Gnuplot script that plots the named CSV columns; plain text, no
/// plotting dependency in the toolkit itself.
std::string plot_script(const std::string& csv_name);

} // namespace smcsim
