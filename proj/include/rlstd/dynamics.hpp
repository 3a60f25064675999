#pragma once

#include <utility>

#include "rlstd/features.hpp"

namespace rlstd {

// ---------------------------------------------------------------------------
// Cart-pole balancing plant
// ---------------------------------------------------------------------------

struct CartPoleState {
  double x = 0.0;          // cart position, m
  double x_dot = 0.0;      // m/s
  double theta = 0.0;      // pole angle from upright, rad
  double theta_dot = 0.0;  // rad/s

  Vec as_vector() const;
};

struct CartPoleParams {
  double cart_mass = 1.0;        // M, kg
  double pole_mass = 0.1;        // m, kg
  double half_pole_length = 0.5; // l, m
  double cart_friction = 0.0005; // mu_c
  double pole_friction = 2e-6;   // mu_p
  double gravity = 9.8;          // magnitude, m/s^2
  double dt = 0.02;              // Euler step, s
  double force_bound = 10.0;     // |F| clamp, N
  double angle_limit_deg = 12.0; // failure beyond this
  double track_limit = 2.4;      // failure beyond this, m
};

struct CartPoleDerivatives {
  double theta_ddot = 0.0;
  double x_ddot = 0.0;
};

// Coupled accelerations of the cart-pole plant; F is applied as given
// (callers clamp to the force bound).
CartPoleDerivatives cartpole_derivatives(const CartPoleState& state, double force,
                                         const CartPoleParams& params);

// True when the state violates the angle or track boundary.
bool cartpole_failed(const CartPoleState& state, const CartPoleParams& params);

// One explicit-Euler step; second member reports boundary failure of the
// resulting state.
std::pair<CartPoleState, bool> cartpole_step(const CartPoleState& state, double force,
                                             const CartPoleParams& params);

// ---------------------------------------------------------------------------
// Acrobot swing-up plant
// ---------------------------------------------------------------------------

// Angles measured from the downward (hanging) vertical.
struct AcrobotState {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta1_dot = 0.0;
  double theta2_dot = 0.0;

  Vec as_vector() const;
};

struct AcrobotParams {
  double m1 = 1.0, m2 = 1.0;    // link masses, kg
  double l1 = 1.0, l2 = 1.0;    // link lengths, m
  double lc1 = 0.5, lc2 = 0.5;  // centers of mass, m
  double i1 = 1.0, i2 = 1.0;    // link inertias, kg m^2
  double gravity = 9.8;
  double sim_dt = 0.05;         // Euler substep, s
  double control_dt = 0.2;      // action hold interval, s
  double torque_bound = 3.0;    // |tau| clamp, N m
  double theta1_dot_bound = 4.0 * M_PI;
  double theta2_dot_bound = 9.0 * M_PI;
};

struct AcrobotDerivatives {
  double theta1_ddot = 0.0;
  double theta2_ddot = 0.0;
};

// Link accelerations for torque tau at the middle joint (clamped to the
// torque bound).
AcrobotDerivatives acrobot_derivatives(const AcrobotState& state, double torque,
                                       const AcrobotParams& params);

// Holds the torque for control_dt, integrating with explicit Euler at
// sim_dt; wraps angles to [-pi, pi) and clamps angular velocities.
AcrobotState acrobot_control_step(const AcrobotState& state, double torque,
                                  const AcrobotParams& params);

// True when the tip rises more than one link length above the pivot:
// -l1 cos(theta1) - l2 cos(theta1 + theta2) > l1 (strict).
bool acrobot_goal_reached(const AcrobotState& state, const AcrobotParams& params);

}  // namespace rlstd
