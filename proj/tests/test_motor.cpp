#include "smcsim/motor.hpp"

#include <doctest.h>

#include <random>

using namespace smcsim;

namespace {
MotorParams table1() { return MotorParams{}; }
MotorParams table1_no_friction() {
  MotorParams p;
  p.f = 0.0;
  return p;
}
} // namespace

TEST_CASE("derivative at the origin with zero input is zero") {
  const MotorState d = derivative({0.0, 0.0}, 0.0, 0.0, table1());
  CHECK(d.i == 0.0);
  CHECK(d.omega == 0.0);
}

TEST_CASE("derivative matches direct substitution") {
  const MotorState d = derivative({0.0, 0.0}, 24.0, 0.0, table1());
  CHECK(d.i == doctest::Approx(24.0 / 0.0028).epsilon(1e-12));
  CHECK(d.omega == 0.0);

  const MotorState d2 = derivative({1.0, 10.0}, 0.0, 0.0, table1_no_friction());
  CHECK(d2.i == doctest::Approx((-5.5 - 10.0) / 0.0028).epsilon(1e-12));
  CHECK(d2.omega == doctest::Approx(1.0 / 0.0163).epsilon(1e-12));
}

TEST_CASE("derivative rejects non-finite input") {
  CHECK_THROWS_AS(derivative({std::nan(""), 0.0}, 0.0, 0.0, table1()), std::domain_error);
  CHECK_THROWS_AS(derivative({0.0, 0.0}, std::numeric_limits<double>::infinity(), 0.0, table1()),
                  std::domain_error);
}

TEST_CASE("state matrices reproduce the numeric plant matrix") {
  const StateMatrices m = state_matrices(table1_no_friction());
  CHECK(m.A(0, 0) == doctest::Approx(-5.5 / 0.0028).epsilon(1e-12));
  CHECK(m.A(0, 1) == doctest::Approx(-1.0 / 0.0028).epsilon(1e-12));
  CHECK(m.A(1, 0) == doctest::Approx(1.0 / 0.0163).epsilon(1e-12));
  CHECK(m.A(1, 1) == 0.0);
  CHECK(m.B(0) == doctest::Approx(1.0 / 0.0028).epsilon(1e-12));
  CHECK(m.B(1) == 0.0);
  CHECK(m.C_out(0) == 0.0);
  CHECK(m.C_out(1) == 1.0);
  CHECK(m.D == 0.0);
}

TEST_CASE("general form keeps the friction term") {
  const StateMatrices m = state_matrices(table1());
  CHECK(m.A(1, 1) == doctest::Approx(-0.2 / 0.0163).epsilon(1e-12));
}

TEST_CASE("derivative agrees with A x + B u on random states") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> dist(-50.0, 50.0);
  const MotorParams p = table1();
  const StateMatrices m = state_matrices(p);
  for (int n = 0; n < 10; ++n) {
    const MotorState x{dist(rng), dist(rng)};
    const double u = dist(rng);
    const Eigen::Vector2d expected = m.A * x.vec() + m.B * u;
    const MotorState d = derivative(x, u, 0.0, p);
    CHECK(d.i == doctest::Approx(expected[0]).epsilon(1e-12));
    CHECK(d.omega == doctest::Approx(expected[1]).epsilon(1e-12));
  }
}

TEST_CASE("transfer function coefficients") {
  const TransferFunction tf = transfer_function(table1());
  CHECK(tf.den[0] == doctest::Approx(2.1).epsilon(1e-12));
  CHECK(tf.den[1] == doctest::Approx(0.09021).epsilon(1e-12));
  CHECK(tf.den[2] == doctest::Approx(4.564e-5).epsilon(1e-12));
  CHECK(tf.num == 1.0);
  CHECK(tf.dist_num[0] == 5.5);
  CHECK(tf.dist_num[1] == 0.0028);
  CHECK(tf.den[2] > 0.0);
}

TEST_CASE("DC gain is 1/k when friction vanishes") {
  MotorParams p = table1_no_friction();
  p.k = 2.5;
  const TransferFunction tf = transfer_function(p);
  CHECK(tf.dc_gain() == doctest::Approx(1.0 / 2.5).epsilon(1e-12));
}

TEST_CASE("steady-state speed equals the DC gains") {
  const MotorParams p = table1();
  CHECK(steady_state_speed(24.0, 0.0, p) == doctest::Approx(24.0 / 2.1).epsilon(1e-12));
  CHECK(steady_state_speed(24.0, 0.0, table1_no_friction()) == doctest::Approx(24.0).epsilon(1e-12));
  CHECK(steady_state_speed(0.0, 0.0, p) == 0.0);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.1, 30.0);
  const TransferFunction tf = transfer_function(p);
  for (int n = 0; n < 20; ++n) {
    const double u = dist(rng);
    const double c_r = 0.1 * dist(rng);
    const double via_tf = tf.dc_gain() * u - tf.disturbance_dc_gain() * c_r;
    CHECK(steady_state_speed(u, c_r, p) == doctest::Approx(via_tf).epsilon(1e-12));
  }
}

TEST_CASE("derivative vanishes at the steady-state point") {
  const MotorParams p = table1();
  const double u = 17.0;
  const double c_r = 0.12;
  const double w_ss = steady_state_speed(u, c_r, p);
  const double i_ss = steady_state_current(w_ss, c_r, p);
  const MotorState d = derivative({i_ss, w_ss}, u, c_r, p);
  CHECK(std::abs(d.i) < 1e-9);
  CHECK(std::abs(d.omega) < 1e-9);
}

TEST_CASE("plant eigenvalues have negative real parts") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(0.05, 10.0);
  for (int n = 0; n < 50; ++n) {
    MotorParams p;
    p.R = dist(rng);
    p.L = 0.01 * dist(rng);
    p.J = 0.01 * dist(rng);
    p.k = dist(rng);
    p.f = (n % 5 == 0) ? 0.0 : 0.1 * dist(rng);
    const StateMatrices m = state_matrices(p);
    if (p.f == 0.0) {
      // marginal pair check: Hurwitz via trace/determinant
      CHECK(m.A.trace() < 0.0);
      CHECK(m.A.determinant() > 0.0);
    } else {
      const Eigen::Vector2cd ev = m.A.eigenvalues();
      CHECK(ev[0].real() < 0.0);
      CHECK(ev[1].real() < 0.0);
    }
  }
}

TEST_CASE("parameter validation") {
  MotorParams p;
  p.R = -1.0;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p = MotorParams{};
  p.L = 0.0;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p = MotorParams{};
  p.f = -0.1;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
}

TEST_CASE("rpm conversion round-trips the calibration point") {
  CHECK(rpm_to_rad_per_sec(660.0) == doctest::Approx(69.115).epsilon(1e-4));
  CHECK(rad_per_sec_to_rpm(rpm_to_rad_per_sec(123.4)) == doctest::Approx(123.4).epsilon(1e-12));
}
