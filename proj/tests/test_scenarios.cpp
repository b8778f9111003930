#include "smcsim/scenario.hpp"

#include <doctest.h>

#include <cmath>

using namespace smcsim;

namespace {

SimulationTrace synthetic_trace(double t_end, double dt, auto omega_fn) {
  SimulationTrace trace;
  for (double t = 0.0; t <= t_end + 0.5 * dt; t += dt) {
    TraceRow row;
    row.t = t;
    row.omega = omega_fn(t);
    trace.rows.push_back(row);
  }
  return trace;
}

} // namespace

TEST_CASE("setpoint scale: 1 V is 660 RPM") {
  CHECK(setpoint_to_speed(1.0) == doctest::Approx(69.115).epsilon(1e-4));
  CHECK(setpoint_to_speed(0.0) == 0.0);
  CHECK(setpoint_to_speed(2.0) == doctest::Approx(rpm_to_rad_per_sec(1320.0)).epsilon(1e-12));
  CHECK_THROWS_AS(setpoint_to_speed(-0.1), std::domain_error);
}

TEST_CASE("setpoint scale is linear") {
  for (double v : {0.1, 0.35, 0.5, 1.7})
    CHECK(setpoint_to_speed(v) == doctest::Approx(v * setpoint_to_speed(1.0)).epsilon(1e-12));
}

TEST_CASE("disturbance routing") {
  DisturbanceProfile none;
  CHECK(disturbance_at(none, 3.0).c_r == 0.0);
  CHECK(disturbance_at(none, 3.0).delta_f == 0.0);

  DisturbanceProfile pulse{DisturbanceKind::load_pulse, 0.05, 10.0, 12.0};
  CHECK(disturbance_at(pulse, 9.9).c_r == 0.0);
  CHECK(disturbance_at(pulse, 11.0).c_r == 0.05);
  CHECK(disturbance_at(pulse, 12.5).c_r == 0.0);
  CHECK(disturbance_at(pulse, 11.0).delta_f == 0.0);

  DisturbanceProfile step{DisturbanceKind::load_step, 0.05, 10.0, 10.0};
  CHECK(disturbance_at(step, 9.0).c_r == 0.0);
  CHECK(disturbance_at(step, 100.0).c_r == 0.05);

  DisturbanceProfile friction{DisturbanceKind::friction_step, 0.1, 10.0, 10.0};
  CHECK(disturbance_at(friction, 10.0).delta_f == 0.1);
  CHECK(disturbance_at(friction, 10.0).c_r == 0.0);
}

TEST_CASE("disturbance profile validation") {
  DisturbanceProfile bad{DisturbanceKind::load_pulse, 0.05, 12.0, 10.0};
  CHECK_THROWS_AS(bad.validate(20.0), std::domain_error);
  DisturbanceProfile late{DisturbanceKind::load_pulse, 0.05, 10.0, 25.0};
  CHECK_THROWS_AS(late.validate(20.0), std::domain_error);
}

TEST_CASE("settling time of a trace already at the target") {
  const auto trace = synthetic_trace(5.0, 0.01, [](double) { return 10.0; });
  CHECK(settling_time(trace, 10.0) == 0.0);
}

TEST_CASE("settling time of a first-order response") {
  const double target = 10.0;
  const auto trace =
      synthetic_trace(10.0, 0.001, [&](double t) { return target * (1.0 - std::exp(-t)); });
  CHECK(settling_time(trace, target) == doctest::Approx(std::log(50.0)).epsilon(1e-3));
}

TEST_CASE("settling time sentinel when never in band") {
  const auto trace = synthetic_trace(5.0, 0.01, [](double) { return 1.0; });
  CHECK(std::isinf(settling_time(trace, 10.0)));
}

TEST_CASE("settling time is monotone in the band width") {
  const double target = 10.0;
  const auto trace = synthetic_trace(
      10.0, 0.001, [&](double t) { return target * (1.0 - 1.3 * std::exp(-t)); });
  double prev = std::numeric_limits<double>::infinity();
  for (double band : {1.0, 2.0, 5.0, 10.0, 20.0}) {
    const double ts = settling_time(trace, target, band);
    CHECK(ts <= prev);
    prev = ts;
  }
}

TEST_CASE("settling time errors") {
  CHECK_THROWS_AS(settling_time(SimulationTrace{}, 10.0), std::invalid_argument);
  const auto trace = synthetic_trace(1.0, 0.01, [](double) { return 1.0; });
  CHECK_THROWS_AS(settling_time(trace, 0.0), std::invalid_argument);
}

TEST_CASE("disturbance drop on a clamped trace is zero") {
  const auto trace = synthetic_trace(20.0, 0.01, [](double) { return 10.0; });
  const DropResult res = disturbance_drop(trace, 10.0, 10.0);
  CHECK(res.drop_pct == 0.0);
  CHECK(res.recovery_time == 0.0);
}

TEST_CASE("disturbance drop formula") {
  const double target = 10.0;
  const auto trace = synthetic_trace(20.0, 0.01, [&](double t) {
    if (t < 10.0) return target;
    if (t < 12.0) return 0.8 * target;
    return target;
  });
  const DropResult res = disturbance_drop(trace, target, 10.0);
  CHECK(res.drop_pct == doctest::Approx(20.0).epsilon(1e-9));
  CHECK(res.recovery_time == doctest::Approx(2.0).epsilon(0.011));
}

TEST_CASE("disturbance before settling is rejected") {
  const auto trace =
      synthetic_trace(20.0, 0.01, [](double t) { return 10.0 * (1.0 - std::exp(-0.1 * t)); });
  CHECK_THROWS_AS(disturbance_drop(trace, 10.0, 5.0), std::invalid_argument);
}

TEST_CASE("control effort") {
  auto trace = synthetic_trace(1.0, 0.01, [](double) { return 0.0; });
  SUBCASE("constant control") {
    for (auto& row : trace.rows) row.u = 15.0;
    const ControlEffort e = control_effort(trace);
    CHECK(e.rms == doctest::Approx(15.0).epsilon(1e-12));
    CHECK(e.peak == 15.0);
  }
  SUBCASE("zero control") {
    const ControlEffort e = control_effort(trace);
    CHECK(e.rms == 0.0);
    CHECK(e.peak == 0.0);
  }
  SUBCASE("square wave") {
    for (std::size_t k = 0; k < trace.size(); ++k) trace.rows[k].u = (k % 2 == 0) ? 3.0 : -3.0;
    const ControlEffort e = control_effort(trace);
    CHECK(e.rms == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(e.peak == 3.0);
  }
}

TEST_CASE("chattering metrics") {
  auto trace = synthetic_trace(1.0, 0.01, [](double) { return 0.0; });
  SUBCASE("constant switching component") {
    for (auto& row : trace.rows) row.u = 8.0;
    const ChatteringMetrics c = chattering_metrics(trace);
    CHECK(c.switch_count == 0);
    CHECK(c.switch_rate == 0.0);
  }
  SUBCASE("alternating every sample") {
    for (std::size_t k = 0; k < trace.size(); ++k) trace.rows[k].u = (k % 2 == 0) ? 8.0 : -8.0;
    const ChatteringMetrics c = chattering_metrics(trace);
    CHECK(c.switch_count == static_cast<long>(trace.size()) - 1);
    CHECK(c.switch_rate == doctest::Approx((trace.size() - 1) / trace.duration()).epsilon(1e-12));
  }
}

TEST_CASE("metrics recomputation is bit-identical") {
  const auto trace = synthetic_trace(
      20.0, 0.01, [](double t) { return 10.0 * (1.0 - std::exp(-2.0 * t)) - (t > 10.0 && t < 12.0 ? 1.0 : 0.0); });
  CHECK(settling_time(trace, 10.0) == settling_time(trace, 10.0));
  const DropResult a = disturbance_drop(trace, 10.0, 10.0);
  const DropResult b = disturbance_drop(trace, 10.0, 10.0);
  CHECK(a.drop_pct == b.drop_pct);
  CHECK(a.recovery_time == b.recovery_time);
}
