#include "rlstd/actor_critic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rlstd {

double action_variance(double value, double k1, double k2) {
  return k1 / (1.0 + std::exp(k2 * value));
}

double internal_reward(double reward, double v_next, double v_now, double gamma) {
  return reward + gamma * v_next - v_now;
}

Actor::Actor(int k, ActorConfig config, Rng& rng) : u_(k), config_(config) {
  if (config_.beta <= 0.0 || config_.k1 <= 0.0 || config_.k2 <= 0.0)
    throw std::invalid_argument("Actor: beta, k1 and k2 must be positive");
  for (int i = 0; i < k; ++i) u_[i] = rng.uniform(0.0, 0.1);
}

double Actor::mean(const Vec& phi) const {
  if (phi.size() != u_.size()) throw std::invalid_argument("Actor::mean: dimension mismatch");
  return u_.dot(phi);
}

double Actor::sample_action(double mean, double sigma, Rng& rng) const {
  double y = (sigma > 0.0) ? rng.gaussian(mean, sigma / std::sqrt(2.0)) : mean;
  return std::clamp(y, config_.action_lo, config_.action_hi);
}

void Actor::update(double r_hat, double action, double mean, double sigma, const Vec& phi) {
  if (sigma <= 0.0) throw std::invalid_argument("Actor::update: sigma must be positive");
  u_ += config_.beta * r_hat * ((action - mean) / sigma) * phi;
}

Critic Critic::td_lambda(int k, double gamma, double lambda, StepSizeSchedule schedule) {
  Critic c;
  c.kind_ = CriticKind::kTdLambda;
  c.gamma_ = gamma;
  c.td_.emplace(k, gamma, lambda, schedule);
  return c;
}

Critic Critic::rls_td(int k, RlsTdConfig config) {
  Critic c;
  c.kind_ = CriticKind::kRlsTd;
  c.gamma_ = config.gamma;
  c.rls_.emplace(k, config);
  return c;
}

Critic Critic::lstd(int k, double gamma, double lambda) {
  Critic c;
  c.kind_ = CriticKind::kLstd;
  c.gamma_ = gamma;
  c.lstd_.emplace(k, gamma, lambda);
  c.lstd_w_ = Vec::Zero(k);
  return c;
}

void Critic::step(const Vec& phi_t, const Vec& phi_next, double reward) {
  switch (kind_) {
    case CriticKind::kTdLambda:
      td_->step(phi_t, phi_next, reward);
      break;
    case CriticKind::kRlsTd:
      rls_->step(phi_t, phi_next, reward);
      break;
    case CriticKind::kLstd:
      lstd_->step(phi_t, phi_next, reward);
      lstd_w_ = lstd_->solve().w;
      break;
  }
  ++updates_;
}

void Critic::episode_reset() {
  if (td_) td_->episode_reset();
  if (rls_) rls_->episode_reset();
  if (lstd_) lstd_->episode_reset();
}

double Critic::value(const Vec& phi) const { return weights().dot(phi); }

Vec Critic::weights() const {
  switch (kind_) {
    case CriticKind::kTdLambda:
      return td_->weights();
    case CriticKind::kRlsTd:
      return rls_->weights();
    case CriticKind::kLstd:
      return lstd_w_;
  }
  return {};
}

namespace {

// Shared control loop. `plant` advances the task one control step and
// reports (reward, terminal, terminated_by-on-terminal).
template <typename State, typename Plant>
EpisodeOutcome run_episode(Actor& actor, Critic& critic, const CmacFeatureMap& critic_features,
                           const CmacFeatureMap& actor_features, State state, Plant&& plant,
                           Rng& rng, const EpisodeOptions& options) {
  EpisodeOutcome outcome;
  const ActorConfig& ac = actor.config();
  const Vec zero_phi = Vec::Zero(critic_features.size());

  Vec phi_c = critic_features.features(state.as_vector());
  for (long t = 0; t < options.max_steps; ++t) {
    const Vec phi_a = actor_features.features(state.as_vector());
    const double v_now = critic.value(phi_c);
    const double mean = actor.mean(phi_a);
    const double sigma = options.greedy ? 0.0 : action_variance(v_now, ac.k1, ac.k2);
    const double action = actor.sample_action(mean, sigma, rng);

    State next_state = state;
    auto [reward, terminal, cause] = plant(next_state, action);
    outcome.steps = t + 1;
    if (options.record_log) outcome.log.push_back({t, state.as_vector(), action});

    const Vec phi_c_next =
        terminal ? zero_phi : critic_features.features(next_state.as_vector());
    const double v_next = terminal ? 0.0 : critic.value(phi_c_next);
    const double r_hat = internal_reward(reward, v_next, v_now, critic.gamma());

    if (options.learn && !options.greedy) {
      const bool actor_ready = critic.updates() >= options.actor_warmup_updates;
      critic.step(phi_c, phi_c_next, reward);
      if (actor_ready) actor.update(r_hat, action, mean, sigma, phi_a);
    }

    if (terminal) {
      outcome.terminated_by = cause;
      if (options.learn && !options.greedy) critic.episode_reset();
      return outcome;
    }
    state = next_state;
    phi_c = phi_c_next;
  }
  outcome.terminated_by = TerminatedBy::kSuccessCap;
  if (options.learn && !options.greedy) critic.episode_reset();
  return outcome;
}

}  // namespace

EpisodeOutcome run_cartpole_episode(Actor& actor, Critic& critic,
                                    const CmacFeatureMap& critic_features,
                                    const CmacFeatureMap& actor_features,
                                    const CartPoleState& start, const CartPoleParams& params,
                                    Rng& rng, const EpisodeOptions& options) {
  auto plant = [&params](CartPoleState& s, double action) {
    double force = std::clamp(action, -params.force_bound, params.force_bound);
    auto [next, failed] = cartpole_step(s, force, params);
    s = next;
    return std::tuple{failed ? -1.0 : 0.0, failed, TerminatedBy::kFailure};
  };
  return run_episode(actor, critic, critic_features, actor_features, start, plant, rng,
                     options);
}

EpisodeOutcome run_acrobot_episode(Actor& actor, Critic& critic,
                                   const CmacFeatureMap& critic_features,
                                   const CmacFeatureMap& actor_features,
                                   const AcrobotState& start, const AcrobotParams& params,
                                   Rng& rng, const EpisodeOptions& options) {
  auto plant = [&params](AcrobotState& s, double action) {
    s = acrobot_control_step(s, action, params);
    bool goal = acrobot_goal_reached(s, params);
    return std::tuple{goal ? 1.0 : 0.0, goal, TerminatedBy::kGoal};
  };
  return run_episode(actor, critic, critic_features, actor_features, start, plant, rng,
                     options);
}

CmacConfig cartpole_critic_cmac() {
  CmacConfig c;
  c.tilings = 4;
  c.partitions = 7;
  const double deg = M_PI / 180.0;
  c.bounds = {{-2.4, 2.4}, {-1.0, 1.0}, {-12.0 * deg, 12.0 * deg}, {-50.0 * deg, 50.0 * deg}};
  c.memory_size = 30;
  c.hashing = CmacHashing::kAdditive;
  return c;
}

CmacConfig cartpole_actor_cmac() {
  CmacConfig c = cartpole_critic_cmac();
  c.memory_size = 100;
  c.hashing = CmacHashing::kPositional;
  return c;
}

CmacConfig acrobot_critic_cmac() {
  CmacConfig c;
  c.tilings = 4;
  c.partitions = 6;  // the non-uniform lists below have 7 edges
  c.bounds = {{-M_PI, M_PI}, {-M_PI, M_PI}, {-4.0 * M_PI, 4.0 * M_PI}, {-9.0 * M_PI, 9.0 * M_PI}};
  c.partition_edges = {
      {-M_PI, -1.0, -0.5, 0.0, 0.5, 1.0, M_PI},
      {-M_PI, -1.0, -0.5, 0.0, 0.5, 1.0, M_PI},
      {-4.0 * M_PI, -1.5 * M_PI, -0.5 * M_PI, 0.0, 0.5 * M_PI, 1.5 * M_PI, 4.0 * M_PI},
      {-9.0 * M_PI, -2.0 * M_PI, -0.5 * M_PI, 0.0, 0.5 * M_PI, 2.0 * M_PI, 9.0 * M_PI}};
  c.memory_size = 80;
  c.hashing = CmacHashing::kPositional;
  return c;
}

CmacConfig acrobot_actor_cmac() {
  CmacConfig c;
  c.tilings = 4;
  c.partitions = 7;
  c.bounds = {{-M_PI, M_PI}, {-M_PI, M_PI}, {-4.0 * M_PI, 4.0 * M_PI}, {-9.0 * M_PI, 9.0 * M_PI}};
  c.memory_size = 100;
  c.hashing = CmacHashing::kPositional;
  return c;
}

}  // namespace rlstd
