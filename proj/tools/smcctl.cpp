#include "smcsim/config.hpp"
#include "smcsim/harness.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitSimFault = 2;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << text;
}

int cmd_run(const std::string& config_path, const std::string& controller_override,
            const std::string& out_override, bool plot, bool allow_unstable) {
  smcsim::ExperimentConfig cfg;
  try {
    cfg = smcsim::load_config_file(config_path);
    if (controller_override == "pid") cfg.controller = smcsim::ControllerKind::pid;
    else if (controller_override == "smc") cfg.controller = smcsim::ControllerKind::smc;
    else if (!controller_override.empty())
      throw smcsim::ConfigError("unknown controller: " + controller_override);
    if (!out_override.empty()) cfg.output.dir = out_override;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    const smcsim::ExperimentResult res = smcsim::run_experiment(cfg, allow_unstable);
    std::filesystem::create_directories(cfg.output.dir);
    const std::string csv_name = cfg.output.base + ".csv";
    smcsim::emit_csv(res.trace, cfg.output.dir + "/" + csv_name);
    if (plot)
      write_text(cfg.output.dir + "/" + cfg.output.base + ".gp", smcsim::plot_script(csv_name));

    const auto& m = res.metrics;
    std::cout << "settling_time_s = " << m.settling_time << "\n";
    std::cout << "overshoot_pct = " << m.overshoot_pct << "\n";
    std::cout << "dist_drop_pct = " << m.dist_drop_pct << "\n";
    std::cout << "recovery_time_s = " << m.recovery_time << "\n";
    std::cout << "control_rms_v = " << m.control_rms << "\n";
    std::cout << "control_peak_v = " << m.control_peak << "\n";
    std::cout << "switch_count = " << m.switch_count << "\n";
    std::cout << "switch_rate_hz = " << m.switch_rate << "\n";
    if (res.reaching) {
      std::cout << "reaching_violations = " << res.reaching->violation_times.size() << "\n";
      if (!res.reaching->ok()) {
        std::cerr << "error: reaching condition violated (first at t = "
                  << res.reaching->violation_times.front()
                  << " s, max dV/dt = " << res.reaching->max_vdot_outside_layer << ")\n";
        return kExitSimFault;
      }
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSimFault;
  }
}

int cmd_compare(const std::string& pid_path, const std::string& smc_path,
                const std::string& out_dir, bool plot) {
  smcsim::ExperimentConfig cfg_pid, cfg_smc;
  try {
    cfg_pid = smcsim::load_config_file(pid_path);
    cfg_smc = smcsim::load_config_file(smc_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  try {
    const smcsim::ComparisonReport report = smcsim::compare(cfg_pid, cfg_smc, out_dir);
    std::cout << report.to_text();
    if (plot) {
      write_text(out_dir + "/" + cfg_pid.output.base + "_pid.gp",
                 smcsim::plot_script(cfg_pid.output.base + "_pid.csv"));
      write_text(out_dir + "/" + cfg_smc.output.base + "_smc.gp",
                 smcsim::plot_script(cfg_smc.output.base + "_smc.csv"));
    }
    return report.complete ? kExitOk : kExitSimFault;
  } catch (const smcsim::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSimFault;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"DC-motor speed control experiments: PID baseline vs sliding-mode control"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run one experiment from a config file");
  std::string config_path, controller_override, out_override;
  bool plot = false, allow_unstable = false;
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--controller", controller_override, "Override controller: pid|smc");
  run->add_option("--out", out_override, "Override output directory");
  run->add_flag("--plot-script", plot, "Also emit a gnuplot script");
  run->add_flag("--allow-unstable", allow_unstable, "Skip the surface stability checks");

  auto* cmp = app.add_subcommand("compare", "Run PID and SMC configs on the shared scenario");
  std::string pid_path, smc_path, cmp_out = "out";
  bool cmp_plot = false;
  cmp->add_option("--pid", pid_path, "PID config file")->required();
  cmp->add_option("--smc", smc_path, "SMC config file")->required();
  cmp->add_option("--out", cmp_out, "Output directory");
  cmp->add_flag("--plot-script", cmp_plot, "Also emit gnuplot scripts");

  auto* defaults = app.add_subcommand("defaults", "Print the default config document");
  bool emit = false;
  defaults->add_flag("--emit", emit, "Print the defaults to stdout");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(config_path, controller_override, out_override, plot, allow_unstable);
  if (cmp->parsed()) return cmd_compare(pid_path, smc_path, cmp_out, cmp_plot);
  std::cout << smcsim::serialize_config(smcsim::ExperimentConfig{});
  return kExitOk;
}
