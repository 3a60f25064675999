#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "rlstd/dynamics.hpp"
#include "rlstd/features.hpp"
#include "rlstd/predictors.hpp"
#include "rlstd/rng.hpp"

namespace rlstd {

struct ActorConfig {
  double beta = 0.5;  // learning factor
  double k1 = 0.4;    // exploration-variance constants
  double k2 = 0.5;
  double action_lo = -10.0;
  double action_hi = 10.0;
};

// sigma = k1 / (1 + exp(k2 * value)).
double action_variance(double value, double k1, double k2);

// TD signal fed to the actor: r + gamma*v_next - v_now (v_next = 0 on
// terminal transitions).
double internal_reward(double reward, double v_next, double v_now, double gamma);

// Linear stochastic policy with state-value-dependent Gaussian
// exploration. The exploration density exp(-(y - mean)^2 / sigma^2)
// corresponds to a normal draw with standard deviation sigma / sqrt(2).
class Actor {
 public:
  Actor(int k, ActorConfig config, Rng& rng);  // weights uniform in [0, 0.1]

  double mean(const Vec& phi) const;
  double sample_action(double mean, double sigma, Rng& rng) const;
  // Policy-gradient ascent: u += beta * r_hat * ((y - mean)/sigma) * phi.
  void update(double r_hat, double action, double mean, double sigma, const Vec& phi);

  const Vec& weights() const { return u_; }
  const ActorConfig& config() const { return config_; }

 private:
  Vec u_;
  ActorConfig config_;
};

enum class CriticKind { kTdLambda, kRlsTd, kLstd };

// Pluggable value learner for the actor-critic loop. The batch
// least-squares variant re-solves its accumulated system after every
// step so value estimates stay current.
class Critic {
 public:
  static Critic td_lambda(int k, double gamma, double lambda, StepSizeSchedule schedule);
  static Critic rls_td(int k, RlsTdConfig config);
  static Critic lstd(int k, double gamma, double lambda);

  void step(const Vec& phi_t, const Vec& phi_next, double reward);
  void episode_reset();
  double value(const Vec& phi) const;
  Vec weights() const;
  double gamma() const { return gamma_; }
  CriticKind kind() const { return kind_; }
  std::size_t updates() const { return updates_; }

 private:
  Critic() = default;
  CriticKind kind_ = CriticKind::kTdLambda;
  double gamma_ = 0.95;
  std::size_t updates_ = 0;
  std::optional<TdLambda> td_;
  std::optional<RlsTd> rls_;
  std::optional<LstdLambda> lstd_;
  Vec lstd_w_;
};

enum class TerminatedBy { kFailure, kSuccessCap, kGoal };

struct EpisodeLogRow {
  long step = 0;
  Vec state;
  double action = 0.0;
};

struct EpisodeOutcome {
  long steps = 0;
  TerminatedBy terminated_by = TerminatedBy::kFailure;
  std::vector<EpisodeLogRow> log;  // populated only when requested
};

struct EpisodeOptions {
  long max_steps = 120000;
  bool learn = true;
  // Zero exploration variance and no updates (post-training evaluation).
  bool greedy = false;
  // Actor updates suppressed until the critic has seen this many steps
  // (batch least-squares startup workaround).
  std::size_t actor_warmup_updates = 0;
  bool record_log = false;
};

// One cart-pole trial from `start` to failure or the step cap.
// Per-step reward is 0, with -1 on the failing transition; failure is
// terminal with zero successor features.
EpisodeOutcome run_cartpole_episode(Actor& actor, Critic& critic,
                                    const CmacFeatureMap& critic_features,
                                    const CmacFeatureMap& actor_features,
                                    const CartPoleState& start, const CartPoleParams& params,
                                    Rng& rng, const EpisodeOptions& options);

// One acrobot trial from `start` to the goal or the step cap. Reward is
// 1 on reaching the goal, 0 otherwise; the goal is terminal.
EpisodeOutcome run_acrobot_episode(Actor& actor, Critic& critic,
                                   const CmacFeatureMap& critic_features,
                                   const CmacFeatureMap& actor_features,
                                   const AcrobotState& start, const AcrobotParams& params,
                                   Rng& rng, const EpisodeOptions& options);

// Default coding structures for the two control tasks.
CmacConfig cartpole_critic_cmac();  // additive hashing, memory 30
CmacConfig cartpole_actor_cmac();   // positional hashing, memory 100
CmacConfig acrobot_critic_cmac();   // non-uniform partitions, memory 80
CmacConfig acrobot_actor_cmac();    // uniform partitions, memory 100

}  // namespace rlstd
