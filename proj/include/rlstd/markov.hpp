#pragma once

#include <cstddef>
#include <vector>

#include "rlstd/features.hpp"
#include "rlstd/rng.hpp"

namespace rlstd {

// One observed step of a chain trajectory.
struct Transition {
  int from = 0;
  int to = 0;
  double reward = 0.0;
  bool terminal = false;  // `to` is absorbing
};

// Finite Markov chain with per-transition rewards. Immutable in use;
// concurrent samplers need no coordination.
struct MarkovChain {
  int n_states = 0;
  Mat transition;                 // row-stochastic, n x n
  Mat reward;                     // r(i, j)
  std::vector<bool> absorbing;    // self-looping terminal states
  Vec initial;                    // distribution over start states
  // Reward attached to the extra zero-feature update performed when the
  // process sits in an absorbing state (Algorithm-2 convention).
  double terminal_reward = 0.0;

  bool has_absorbing() const;
  // Expected one-step reward per state: r_bar(i) = sum_j p_ij r(i,j);
  // absorbing states report the terminal reward.
  Vec expected_rewards() const;
  // Throws std::invalid_argument on a malformed chain (rows not
  // stochastic within 1e-12, absorbing state without a self-loop, ...).
  void validate() const;
};

// The 13-state absorbing hop chain: start at 12, absorb at 0, hop down
// one or two states with probability 0.5 each, reward -3 per transition
// except -2 on the forced 1 -> 0 step.
MarkovChain hopworld();

// True values V(i) = -2i, indexed by state.
Vec true_hopworld_values();

// Samples one episode from the initial distribution into an absorbing
// state. Deterministic given the generator state. Throws
// std::runtime_error if `max_steps` is exceeded.
std::vector<Transition> sample_trajectory(const MarkovChain& chain, Rng& rng,
                                          std::size_t max_steps = 1000000);

struct FixedPoint {
  Vec w;             // the projected-equation solution W*
  Mat a;             // steady-state A matrix (per-episode or per-step scale)
  Vec b;             // steady-state b vector
  Vec state_weights; // diagonal of D (normalized visit frequencies)
};

// Analytic fixed point of the multi-step projected Bellman equation for
// a linear featurizer: W* = A^-1 b with
//   A = Phi^T D (I - gl*Q)^-1 (I - g*Q) Phi,
//   b = Phi^T D (I - gl*Q)^-1 r_bar,
// where Q equals P with absorbing rows zeroed (successor features of an
// absorbing state are zero and the episode restarts), and D carries the
// stationary distribution (ergodic case) or normalized expected visits
// per episode (absorbing case). Throws std::invalid_argument for a
// rank-deficient A (message reports the rank).
FixedPoint exact_fixed_point(const MarkovChain& chain, const Mat& phi, double lambda,
                             double gamma);

// True value function (I - gamma Q)^-1 r_bar over all states.
Vec true_values(const MarkovChain& chain, double gamma);

struct BoundCheck {
  double lhs = 0.0;  // ||Phi W* - V*||_D
  double rhs = 0.0;  // (1 - lambda*gamma)/(1 - gamma) ||Pi V* - V*||_D
  bool holds = false;
};

// Approximation-error bound check for the fixed point; requires a
// strictly discounted chain (gamma < 1), else std::domain_error.
BoundCheck error_bound_check(const MarkovChain& chain, const Mat& phi, double lambda,
                             double gamma);

}  // namespace rlstd
