#include "rlstd/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace rlstd {

namespace {

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

double wrap_angle(double a) {
  a = std::fmod(a + M_PI, 2.0 * M_PI);
  if (a < 0.0) a += 2.0 * M_PI;
  return a - M_PI;
}

}  // namespace

Vec CartPoleState::as_vector() const {
  Vec v(4);
  v << x, x_dot, theta, theta_dot;
  return v;
}

CartPoleDerivatives cartpole_derivatives(const CartPoleState& s, double force,
                                         const CartPoleParams& p) {
  const double total_mass = p.cart_mass + p.pole_mass;
  const double ml = p.pole_mass * p.half_pole_length;
  const double sin_t = std::sin(s.theta);
  const double cos_t = std::cos(s.theta);

  CartPoleDerivatives d;
  d.theta_ddot =
      (total_mass * p.gravity * sin_t -
       cos_t * (force + ml * s.theta_dot * s.theta_dot * sin_t - p.cart_friction * sgn(s.x_dot)) -
       p.pole_friction * total_mass * s.theta_dot / ml) /
      (4.0 / 3.0 * total_mass * p.half_pole_length - ml * cos_t * cos_t);
  d.x_ddot = (force + ml * (s.theta_dot * s.theta_dot * sin_t - d.theta_ddot * cos_t) -
              p.cart_friction * sgn(s.x_dot)) /
             total_mass;
  return d;
}

bool cartpole_failed(const CartPoleState& s, const CartPoleParams& p) {
  const double angle_limit = p.angle_limit_deg * M_PI / 180.0;
  return std::abs(s.theta) > angle_limit || std::abs(s.x) > p.track_limit;
}

std::pair<CartPoleState, bool> cartpole_step(const CartPoleState& s, double force,
                                             const CartPoleParams& p) {
  CartPoleDerivatives d = cartpole_derivatives(s, force, p);
  CartPoleState next;
  next.x = s.x + p.dt * s.x_dot;
  next.x_dot = s.x_dot + p.dt * d.x_ddot;
  next.theta = s.theta + p.dt * s.theta_dot;
  next.theta_dot = s.theta_dot + p.dt * d.theta_ddot;
  return {next, cartpole_failed(next, p)};
}

Vec AcrobotState::as_vector() const {
  Vec v(4);
  v << theta1, theta2, theta1_dot, theta2_dot;
  return v;
}

AcrobotDerivatives acrobot_derivatives(const AcrobotState& s, double torque,
                                       const AcrobotParams& p) {
  const double tau = std::clamp(torque, -p.torque_bound, p.torque_bound);
  const double cos2 = std::cos(s.theta2);
  const double sin2 = std::sin(s.theta2);

  const double d1 = p.m1 * p.lc1 * p.lc1 +
                    p.m2 * (p.l1 * p.l1 + p.lc2 * p.lc2 + 2.0 * p.l1 * p.lc2 * cos2) + p.i1 +
                    p.i2;
  const double d2 = p.m2 * (p.lc2 * p.lc2 + p.l1 * p.lc2 * cos2) + p.i2;
  // cos(a - pi/2) written as sin(a) so the hanging rest state gives an
  // exactly zero gravity torque instead of a ~1e-16 residual.
  const double phi2 = p.m2 * p.lc2 * p.gravity * std::sin(s.theta1 + s.theta2);
  const double phi1 = -p.m2 * p.l1 * p.lc2 * s.theta2_dot * s.theta2_dot * sin2 -
                      2.0 * p.m2 * p.l1 * p.lc2 * s.theta1_dot * s.theta2_dot * sin2 +
                      (p.m1 * p.lc1 + p.m2 * p.l1) * p.gravity * std::sin(s.theta1) +
                      phi2;

  AcrobotDerivatives d;
  // Second-joint acceleration in the reduced (first joint eliminated)
  // form; includes the centrifugal theta1_dot^2 coupling term, without
  // which the unforced plant does not conserve energy.
  d.theta2_ddot =
      (tau + d2 / d1 * phi1 - p.m2 * p.l1 * p.lc2 * s.theta1_dot * s.theta1_dot * sin2 - phi2) /
      (p.m2 * p.lc2 * p.lc2 + p.i2 - d2 * d2 / d1);
  d.theta1_ddot = -(d2 * d.theta2_ddot + phi1) / d1;
  return d;
}

AcrobotState acrobot_control_step(const AcrobotState& state, double torque,
                                  const AcrobotParams& p) {
  const int substeps = static_cast<int>(std::lround(p.control_dt / p.sim_dt));
  AcrobotState s = state;
  for (int i = 0; i < substeps; ++i) {
    // Semi-implicit Euler: velocities first, positions with the updated
    // velocities.  A fully explicit substep pumps energy into the undamped
    // plant fast enough that it swings itself up with zero torque.
    AcrobotDerivatives d = acrobot_derivatives(s, torque, p);
    s.theta1_dot += p.sim_dt * d.theta1_ddot;
    s.theta2_dot += p.sim_dt * d.theta2_ddot;
    s.theta1_dot = std::clamp(s.theta1_dot, -p.theta1_dot_bound, p.theta1_dot_bound);
    s.theta2_dot = std::clamp(s.theta2_dot, -p.theta2_dot_bound, p.theta2_dot_bound);
    s.theta1 += p.sim_dt * s.theta1_dot;
    s.theta2 += p.sim_dt * s.theta2_dot;
    s.theta1 = wrap_angle(s.theta1);
    s.theta2 = wrap_angle(s.theta2);
  }
  return s;
}

bool acrobot_goal_reached(const AcrobotState& s, const AcrobotParams& p) {
  double tip_height = -p.l1 * std::cos(s.theta1) - p.l2 * std::cos(s.theta1 + s.theta2);
  return tip_height > p.l1;
}

}  // namespace rlstd
