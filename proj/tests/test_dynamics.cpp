#include <doctest.h>

#include <cmath>

#include "rlstd/dynamics.hpp"
#include "test_support.hpp"

using namespace rlstd;
using namespace rlstd::testing;

namespace {

// Independent transcription of the balancing-plant accelerations in the
// unreduced textbook form, kept deliberately different in shape from the
// library implementation.
CartPoleDerivatives reference_cartpole(const CartPoleState& s, double f,
                                       const CartPoleParams& p) {
  double total = p.cart_mass + p.pole_mass;
  double sgn = s.x_dot > 0 ? 1.0 : (s.x_dot < 0 ? -1.0 : 0.0);
  double num = p.gravity * std::sin(s.theta) +
               std::cos(s.theta) *
                   (-f - p.pole_mass * p.half_pole_length * s.theta_dot * s.theta_dot *
                            std::sin(s.theta) +
                    p.cart_friction * sgn) /
                   total -
               p.pole_friction * s.theta_dot / (p.pole_mass * p.half_pole_length);
  double den = p.half_pole_length *
               (4.0 / 3.0 - p.pole_mass * std::cos(s.theta) * std::cos(s.theta) / total);
  CartPoleDerivatives d;
  d.theta_ddot = num / den;
  d.x_ddot = (f + p.pole_mass * p.half_pole_length *
                      (s.theta_dot * s.theta_dot * std::sin(s.theta) -
                       d.theta_ddot * std::cos(s.theta)) -
              p.cart_friction * sgn) /
             total;
  return d;
}

}  // namespace

TEST_CASE("balanced upright pole with no force stays at rest") {
  CartPoleParams p;
  CartPoleDerivatives d = cartpole_derivatives(CartPoleState{}, 0.0, p);
  CHECK(d.theta_ddot == doctest::Approx(0.0));
  CHECK(d.x_ddot == doctest::Approx(0.0));
}

TEST_CASE("pushing the resting cart couples back into the pole") {
  CartPoleParams p;
  CartPoleDerivatives d = cartpole_derivatives(CartPoleState{}, 10.0, p);
  // theta: -10 / (4/3 * 1.1 * 0.5 - 0.05) ; x follows from the reaction.
  CHECK(d.theta_ddot == doctest::Approx(-10.0 / (4.0 / 3.0 * 1.1 * 0.5 - 0.05)));
  CHECK(d.x_ddot == doctest::Approx((10.0 + 0.05 * (-d.theta_ddot)) / 1.1));
  CHECK(d.x_ddot == doctest::Approx(9.7561).epsilon(1e-4));
}

TEST_CASE("a tilted pole falls further under gravity") {
  CartPoleParams p;
  CartPoleDerivatives d = cartpole_derivatives(CartPoleState{0, 0, 0.1, 0}, 0.0, p);
  CHECK(d.theta_ddot > 0.0);
  CartPoleDerivatives m = cartpole_derivatives(CartPoleState{0, 0, -0.1, 0}, 0.0, p);
  CHECK(m.theta_ddot == doctest::Approx(-d.theta_ddot));
  CHECK(m.x_ddot == doctest::Approx(-d.x_ddot));
}

TEST_CASE("cart accelerations agree with an independent transcription") {
  CartPoleParams p;
  Rng rng(12);
  for (int i = 0; i < 200; ++i) {
    CartPoleState s{rng.uniform(-2.4, 2.4), rng.uniform(-2.0, 2.0),
                    rng.uniform(-0.2, 0.2), rng.uniform(-1.5, 1.5)};
    double f = rng.uniform(-10.0, 10.0);
    CartPoleDerivatives got = cartpole_derivatives(s, f, p);
    CartPoleDerivatives want = reference_cartpole(s, f, p);
    CHECK(got.theta_ddot == doctest::Approx(want.theta_ddot).epsilon(1e-10));
    CHECK(got.x_ddot == doctest::Approx(want.x_ddot).epsilon(1e-10));
  }
}

TEST_CASE("cart friction is odd in the velocity and vanishes at rest") {
  CartPoleParams p;
  CartPoleState rest{};
  CartPoleState moving{0, 1.0, 0, 0};
  double at_rest = cartpole_derivatives(rest, 0.0, p).x_ddot;
  CHECK(at_rest == doctest::Approx(0.0));
  CHECK(cartpole_derivatives(moving, 0.0, p).x_ddot < at_rest);
}

TEST_CASE("euler step advances position with the current velocity") {
  CartPoleParams p;
  CartPoleState s{0.5, 1.0, 0.05, -0.2};
  auto [next, failed] = cartpole_step(s, 3.0, p);
  CartPoleDerivatives d = cartpole_derivatives(s, 3.0, p);
  CHECK(next.x == doctest::Approx(0.5 + 0.02 * 1.0));
  CHECK(next.theta == doctest::Approx(0.05 + 0.02 * (-0.2)));
  CHECK(next.x_dot == doctest::Approx(1.0 + 0.02 * d.x_ddot));
  CHECK(next.theta_dot == doctest::Approx(-0.2 + 0.02 * d.theta_ddot));
  CHECK_FALSE(failed);
}

TEST_CASE("failure boundaries are strict") {
  CartPoleParams p;
  double limit = 12.0 * M_PI / 180.0;
  CHECK_FALSE(cartpole_failed(CartPoleState{0, 0, limit, 0}, p));
  CHECK(cartpole_failed(CartPoleState{0, 0, std::nextafter(limit, 1.0), 0}, p));
  CHECK_FALSE(cartpole_failed(CartPoleState{2.4, 0, 0, 0}, p));
  CHECK(cartpole_failed(CartPoleState{-2.5, 0, 0, 0}, p));
}

TEST_CASE("unforced pole started slightly off falls within a couple of seconds") {
  CartPoleParams p;
  CartPoleState s{0, 0, 0.01, 0};
  bool failed = false;
  int steps = 0;
  while (!failed && steps < 500) {
    auto out = cartpole_step(s, 0.0, p);
    s = out.first;
    failed = out.second;
    ++steps;
  }
  CHECK(failed);
  CHECK(steps > 10);
}

// ---------------------------------------------------------------------------

TEST_CASE("hanging acrobot with no torque stays at rest") {
  AcrobotParams p;
  AcrobotDerivatives d = acrobot_derivatives(AcrobotState{}, 0.0, p);
  CHECK(d.theta1_ddot == doctest::Approx(0.0));
  CHECK(d.theta2_ddot == doctest::Approx(0.0));
}

TEST_CASE("unit torque at the hanging state matches the hand computation") {
  AcrobotParams p;
  AcrobotDerivatives d = acrobot_derivatives(AcrobotState{}, 1.0, p);
  // d1 = 4.5, d2 = 1.75, inner inertia 1.25 - 1.75^2/4.5.
  double denom = 1.25 - 1.75 * 1.75 / 4.5;
  CHECK(d.theta2_ddot == doctest::Approx(1.0 / denom));
  CHECK(d.theta1_ddot == doctest::Approx(-1.75 / 4.5 * d.theta2_ddot));
  CHECK(d.theta2_ddot == doctest::Approx(1.7561).epsilon(1e-4));
}

TEST_CASE("torque requests beyond the bound are clamped") {
  AcrobotParams p;
  AcrobotDerivatives at_bound = acrobot_derivatives(AcrobotState{}, 3.0, p);
  AcrobotDerivatives beyond = acrobot_derivatives(AcrobotState{}, 50.0, p);
  CHECK(beyond.theta2_ddot == doctest::Approx(at_bound.theta2_ddot));
}

TEST_CASE("accelerations satisfy the second-joint force balance") {
  // d2*a1 + (m2*lc2^2 + I2)*a2 + m2*l1*lc2*w1^2*sin(t2) + phi2 = tau must
  // hold for the Lagrangian plant; checked against an independent
  // evaluation of each term.
  AcrobotParams p;
  Rng rng(77);
  for (int i = 0; i < 200; ++i) {
    AcrobotState s{rng.uniform(-M_PI, M_PI), rng.uniform(-M_PI, M_PI),
                   rng.uniform(-6.0, 6.0), rng.uniform(-10.0, 10.0)};
    double tau = rng.uniform(-3.0, 3.0);
    AcrobotDerivatives d = acrobot_derivatives(s, tau, p);
    double d2 = p.m2 * (p.lc2 * p.lc2 + p.l1 * p.lc2 * std::cos(s.theta2)) + p.i2;
    double phi2 = p.m2 * p.lc2 * p.gravity * std::cos(s.theta1 + s.theta2 - M_PI / 2.0);
    double balance = d2 * d.theta1_ddot + (p.m2 * p.lc2 * p.lc2 + p.i2) * d.theta2_ddot +
                     p.m2 * p.l1 * p.lc2 * s.theta1_dot * s.theta1_dot * std::sin(s.theta2) +
                     phi2;
    CHECK(balance == doctest::Approx(tau).epsilon(1e-9));
  }
}

TEST_CASE("unforced swings conserve mechanical energy under a fine integrator") {
  AcrobotParams p;
  AcrobotState s{1.2, -0.4, 0.3, 0.1};
  double e0 = acrobot_energy(s, p);
  for (int i = 0; i < 4000; ++i) s = acrobot_rk4_step(s, 0.005, p);
  CHECK(acrobot_energy(s, p) == doctest::Approx(e0).epsilon(1e-6));
}

TEST_CASE("control step performs four semi-implicit euler substeps") {
  AcrobotParams p;
  AcrobotState s{0.3, -0.2, 0.5, -0.1};
  AcrobotState manual = s;
  for (int i = 0; i < 4; ++i) {
    AcrobotDerivatives d = acrobot_derivatives(manual, 2.0, p);
    manual.theta1_dot += 0.05 * d.theta1_ddot;
    manual.theta2_dot += 0.05 * d.theta2_ddot;
    manual.theta1 += 0.05 * manual.theta1_dot;
    manual.theta2 += 0.05 * manual.theta2_dot;
  }
  AcrobotState got = acrobot_control_step(s, 2.0, p);
  CHECK(got.theta1 == doctest::Approx(manual.theta1));
  CHECK(got.theta2 == doctest::Approx(manual.theta2));
  CHECK(got.theta1_dot == doctest::Approx(manual.theta1_dot));
  CHECK(got.theta2_dot == doctest::Approx(manual.theta2_dot));
}

TEST_CASE("control step wraps angles and clamps velocities") {
  AcrobotParams p;
  AcrobotState spinning{3.1, -3.1, 4.0 * M_PI, -9.0 * M_PI};
  AcrobotState next = acrobot_control_step(spinning, 3.0, p);
  CHECK(next.theta1 >= -M_PI);
  CHECK(next.theta1 < M_PI);
  CHECK(next.theta2 >= -M_PI);
  CHECK(next.theta2 < M_PI);
  CHECK(std::abs(next.theta1_dot) <= 4.0 * M_PI);
  CHECK(std::abs(next.theta2_dot) <= 9.0 * M_PI);
}

TEST_CASE("goal test is a strict tip-height threshold") {
  AcrobotParams p;
  CHECK_FALSE(acrobot_goal_reached(AcrobotState{}, p));
  // Both links straight up: tip height 2.
  CHECK(acrobot_goal_reached(AcrobotState{M_PI, 0, 0, 0}, p));
  // tip height exactly l1 (theta1 = 2*pi/3, theta2 = 0) does not count.
  CHECK_FALSE(acrobot_goal_reached(AcrobotState{2.0 * M_PI / 3.0, 0, 0, 0}, p));
  CHECK(acrobot_goal_reached(AcrobotState{2.0 * M_PI / 3.0 + 1e-6, 0, 0, 0}, p));
}
