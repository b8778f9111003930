#include "smcsim/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace smcsim {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, int line) {
  const std::string v = trim(value);
  double out = 0.0;
  const auto* first = v.data();
  const auto* last = v.data() + v.size();
  const auto res = std::from_chars(first, last, out);
  if (res.ec != std::errc{} || res.ptr != last)
    throw ConfigError("line " + std::to_string(line) + ": expected a number, got '" + v + "'");
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

const char* kind_name(DisturbanceKind k) {
  switch (k) {
    case DisturbanceKind::none: return "none";
    case DisturbanceKind::load_step: return "load_step";
    case DisturbanceKind::load_pulse: return "load_pulse";
    case DisturbanceKind::friction_step: return "friction_step";
  }
  return "none";
}

DisturbanceKind parse_kind(const std::string& v, int line) {
  if (v == "none") return DisturbanceKind::none;
  if (v == "load_step") return DisturbanceKind::load_step;
  if (v == "load_pulse") return DisturbanceKind::load_pulse;
  if (v == "friction_step") return DisturbanceKind::friction_step;
  throw ConfigError("line " + std::to_string(line) + ": unknown disturbance kind '" + v + "'");
}

} // namespace

void ExperimentConfig::validate() const {
  motor.validate();
  pid.validate();
  scenario.validate();
  sim.validate(scenario.t_end);
  // The kappa sign condition is checked when the surface is built for a
  // run, where it can be bypassed deliberately; the shape invariants hold
  // for every valid config.
  if (surface.c1 == 0.0) throw std::domain_error("SlidingSurface: c1 = 0 makes c.B singular");
  if (!(surface.phi >= 0.0)) throw std::domain_error("SlidingSurface: phi must be >= 0");
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig cfg;

  using Setter = std::function<void(const std::string&, int)>;
  const std::map<std::string, Setter> setters = {
      {"motor.R", [&](const std::string& v, int n) { cfg.motor.R = parse_double(v, n); }},
      {"motor.L", [&](const std::string& v, int n) { cfg.motor.L = parse_double(v, n); }},
      {"motor.J", [&](const std::string& v, int n) { cfg.motor.J = parse_double(v, n); }},
      {"motor.f", [&](const std::string& v, int n) { cfg.motor.f = parse_double(v, n); }},
      {"motor.k", [&](const std::string& v, int n) { cfg.motor.k = parse_double(v, n); }},
      {"motor.u_max", [&](const std::string& v, int n) { cfg.motor.u_max = parse_double(v, n); }},
      {"sim.dt_plant", [&](const std::string& v, int n) { cfg.sim.dt_plant = parse_double(v, n); }},
      {"sim.dt_control", [&](const std::string& v, int n) { cfg.sim.dt_control = parse_double(v, n); }},
      {"sim.method",
       [&](const std::string& v, int n) {
         if (v == "euler") cfg.sim.method = IntegrationMethod::euler;
         else if (v == "rk4") cfg.sim.method = IntegrationMethod::rk4;
         else throw ConfigError("line " + std::to_string(n) + ": unknown method '" + v + "'");
       }},
      {"controller.type",
       [&](const std::string& v, int n) {
         if (v == "pid") cfg.controller = ControllerKind::pid;
         else if (v == "smc") cfg.controller = ControllerKind::smc;
         else throw ConfigError("line " + std::to_string(n) + ": unknown controller '" + v + "'");
       }},
      {"pid.kp", [&](const std::string& v, int n) { cfg.pid.kp = parse_double(v, n); }},
      {"pid.ki", [&](const std::string& v, int n) { cfg.pid.ki = parse_double(v, n); }},
      {"pid.kd", [&](const std::string& v, int n) { cfg.pid.kd = parse_double(v, n); }},
      {"pid.u_limit", [&](const std::string& v, int n) { cfg.pid.u_limit = parse_double(v, n); }},
      {"pid.tf_d", [&](const std::string& v, int n) { cfg.pid.tf_d = parse_double(v, n); }},
      {"surface.c1", [&](const std::string& v, int n) { cfg.surface.c1 = parse_double(v, n); }},
      {"surface.c2", [&](const std::string& v, int n) { cfg.surface.c2 = parse_double(v, n); }},
      {"surface.kappa", [&](const std::string& v, int n) { cfg.surface.kappa = parse_double(v, n); }},
      {"surface.phi", [&](const std::string& v, int n) { cfg.surface.phi = parse_double(v, n); }},
      {"scenario.setpoint_volts",
       [&](const std::string& v, int n) { cfg.scenario.setpoint_volts = parse_double(v, n); }},
      {"scenario.t_end", [&](const std::string& v, int n) { cfg.scenario.t_end = parse_double(v, n); }},
      {"scenario.disturbance",
       [&](const std::string& v, int n) { cfg.scenario.disturbance.kind = parse_kind(v, n); }},
      {"scenario.magnitude",
       [&](const std::string& v, int n) { cfg.scenario.disturbance.magnitude = parse_double(v, n); }},
      {"scenario.t_on", [&](const std::string& v, int n) { cfg.scenario.disturbance.t_on = parse_double(v, n); }},
      {"scenario.t_off", [&](const std::string& v, int n) { cfg.scenario.disturbance.t_off = parse_double(v, n); }},
      {"scenario.i0", [&](const std::string& v, int n) { cfg.scenario.initial_state.i = parse_double(v, n); }},
      {"scenario.omega0",
       [&](const std::string& v, int n) { cfg.scenario.initial_state.omega = parse_double(v, n); }},
      {"output.dir", [&](const std::string& v, int) { cfg.output.dir = v; }},
      {"output.base", [&](const std::string& v, int) { cfg.output.base = v; }},
  };

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'section.key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end())
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    it->second(value, line_no);
  }

  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  return cfg;
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "motor.R = " << format_double(cfg.motor.R) << "\n";
  out << "motor.L = " << format_double(cfg.motor.L) << "\n";
  out << "motor.J = " << format_double(cfg.motor.J) << "\n";
  out << "motor.f = " << format_double(cfg.motor.f) << "\n";
  out << "motor.k = " << format_double(cfg.motor.k) << "\n";
  out << "motor.u_max = " << format_double(cfg.motor.u_max) << "\n";
  out << "sim.dt_plant = " << format_double(cfg.sim.dt_plant) << "\n";
  out << "sim.dt_control = " << format_double(cfg.sim.dt_control) << "\n";
  out << "sim.method = " << (cfg.sim.method == IntegrationMethod::rk4 ? "rk4" : "euler") << "\n";
  out << "controller.type = " << (cfg.controller == ControllerKind::smc ? "smc" : "pid") << "\n";
  out << "pid.kp = " << format_double(cfg.pid.kp) << "\n";
  out << "pid.ki = " << format_double(cfg.pid.ki) << "\n";
  out << "pid.kd = " << format_double(cfg.pid.kd) << "\n";
  out << "pid.u_limit = " << format_double(cfg.pid.u_limit) << "\n";
  out << "pid.tf_d = " << format_double(cfg.pid.tf_d) << "\n";
  out << "surface.c1 = " << format_double(cfg.surface.c1) << "\n";
  out << "surface.c2 = " << format_double(cfg.surface.c2) << "\n";
  out << "surface.kappa = " << format_double(cfg.surface.kappa) << "\n";
  out << "surface.phi = " << format_double(cfg.surface.phi) << "\n";
  out << "scenario.setpoint_volts = " << format_double(cfg.scenario.setpoint_volts) << "\n";
  out << "scenario.t_end = " << format_double(cfg.scenario.t_end) << "\n";
  out << "scenario.disturbance = " << kind_name(cfg.scenario.disturbance.kind) << "\n";
  out << "scenario.magnitude = " << format_double(cfg.scenario.disturbance.magnitude) << "\n";
  out << "scenario.t_on = " << format_double(cfg.scenario.disturbance.t_on) << "\n";
  out << "scenario.t_off = " << format_double(cfg.scenario.disturbance.t_off) << "\n";
  out << "scenario.i0 = " << format_double(cfg.scenario.initial_state.i) << "\n";
  out << "scenario.omega0 = " << format_double(cfg.scenario.initial_state.omega) << "\n";
  out << "output.dir = " << cfg.output.dir << "\n";
  out << "output.base = " << cfg.output.base << "\n";
  return out.str();
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

} // namespace smcsim
