#pragma once

#include "smcsim/controllers.hpp"
#include "smcsim/motor.hpp"
#include "smcsim/scenario.hpp"
#include "smcsim/simulate.hpp"

#include <stdexcept>
#include <string>

namespace smcsim {

enum class ControllerKind { pid, smc };

struct SurfaceConfig {
  double c1 = 0.05;
  double c2 = 1.0;
  double kappa = 8.0;
  double phi = 0.5;

  SlidingSurface build(bool allow_unstable = false) const {
    const Eigen::RowVector2d c{c1, c2};
    return allow_unstable ? SlidingSurface::unchecked(c, kappa, phi)
                          : SlidingSurface(c, kappa, phi);
  }
};

struct OutputConfig {
  std::string dir = "out";
  std::string base = "run";
};

struct ExperimentConfig {
  MotorParams motor;
  SimConfig sim;
  ControllerKind controller = ControllerKind::smc;
  PidConfig pid{0.2, 1.5, 0.0, 24.0, 0.01};
  SurfaceConfig surface;
  Scenario scenario{0.05, 20.0, {DisturbanceKind::load_pulse, 0.4, 10.0, 12.0}, {}};
  OutputConfig output;

  void validate() const;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses the line-oriented `section.key = value` document. Omitted keys
/// keep their defaults; unknown keys, type mismatches, and invariant
/// violations are reported with their line number.
ExperimentConfig parse_config(const std::string& text);

/// Canonical serialization: every key, fixed order, one per line.
/// serialize(parse(d)) is idempotent for valid documents.
std::string serialize_config(const ExperimentConfig& cfg);

ExperimentConfig load_config_file(const std::string& path);

} // namespace smcsim
