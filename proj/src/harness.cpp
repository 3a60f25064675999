#include "rlstd/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rlstd {

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::kHopworldPrediction: return "hopworld_prediction";
    case Experiment::kCartpoleControl: return "cartpole_control";
    case Experiment::kAcrobotControl: return "acrobot_control";
  }
  return "?";
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kTdLambda: return "td_lambda";
    case Algorithm::kLstdLambda: return "lstd_lambda";
    case Algorithm::kRlsTdLambda: return "rls_td_lambda";
    case Algorithm::kAhc: return "ahc";
    case Algorithm::kFastAhc: return "fast_ahc";
    case Algorithm::kAhcLstd: return "ahc_lstd";
  }
  return "?";
}

std::string to_string(TerminatedBy t) {
  switch (t) {
    case TerminatedBy::kFailure: return "failure";
    case TerminatedBy::kSuccessCap: return "success_cap";
    case TerminatedBy::kGoal: return "goal";
  }
  return "?";
}

Experiment parse_experiment(const std::string& name) {
  if (name == "hopworld_prediction") return Experiment::kHopworldPrediction;
  if (name == "cartpole_control") return Experiment::kCartpoleControl;
  if (name == "acrobot_control") return Experiment::kAcrobotControl;
  throw std::invalid_argument("unknown experiment: " + name);
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "td_lambda") return Algorithm::kTdLambda;
  if (name == "lstd_lambda") return Algorithm::kLstdLambda;
  if (name == "rls_td_lambda") return Algorithm::kRlsTdLambda;
  if (name == "ahc") return Algorithm::kAhc;
  if (name == "fast_ahc") return Algorithm::kFastAhc;
  if (name == "ahc_lstd") return Algorithm::kAhcLstd;
  throw std::invalid_argument("unknown algorithm: " + name);
}

StepSizeSchedule ScheduleConfig::build() const {
  return fixed ? StepSizeSchedule::constant(alpha) : StepSizeSchedule::decaying(alpha0, n0);
}

void ExperimentConfig::validate() const {
  if (lambda_grid.empty()) throw std::invalid_argument("config: lambda grid is empty");
  for (double l : lambda_grid)
    if (l < 0.0 || l > 1.0) throw std::invalid_argument("config: lambda must be in [0, 1]");
  if (gamma <= 0.0 || gamma > 1.0) throw std::invalid_argument("config: gamma must be in (0, 1]");
  if (mu <= 0.0 || mu > 1.0) throw std::invalid_argument("config: mu must be in (0, 1]");
  if (delta <= 0.0) throw std::invalid_argument("config: delta must be positive");
  if (runs < 1) throw std::invalid_argument("config: runs must be >= 1");
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (beta <= 0.0 || k1 <= 0.0 || k2 <= 0.0)
    throw std::invalid_argument("config: beta, k1, k2 must be positive");
  if (max_trials < 1 || success_steps < 1 || acrobot_trials < 1 || trial_step_cap < 1 ||
      greedy_step_cap < 1)
    throw std::invalid_argument("config: step/trial limits must be >= 1");
}

double rms_error(const Vec& w, const Mat& phi, const Vec& true_values) {
  if (phi.cols() != w.size() || phi.rows() != true_values.size())
    throw std::invalid_argument("rms_error: dimension mismatch");
  Vec err = phi * w - true_values;
  return std::sqrt(err.squaredNorm() / static_cast<double>(err.size()));
}

double PredictionResult::mean_rms_at(double lambda, int trial) const {
  double sum = 0.0;
  int count = 0;
  for (const auto& row : rows)
    if (row.trial == trial && std::abs(row.lambda - lambda) < 1e-12) {
      sum += row.rms;
      ++count;
    }
  if (count == 0) throw std::invalid_argument("mean_rms_at: no matching rows");
  return sum / count;
}

double PredictionResult::mean_rms_first(double lambda, int n) const {
  double sum = 0.0;
  int count = 0;
  for (const auto& row : rows)
    if (row.trial <= n && std::abs(row.lambda - lambda) < 1e-12) {
      sum += row.rms;
      ++count;
    }
  if (count == 0) throw std::invalid_argument("mean_rms_first: no matching rows");
  return sum / count;
}

namespace {

// One episode of learner updates. The final transition enters the
// absorbing state; it is followed by the zero-feature terminal update
// before the traces reset.
template <typename Learner>
void feed_trajectory(Learner& learner, const std::vector<Transition>& trajectory,
                     const Mat& phi, double terminal_reward) {
  const Vec zero = Vec::Zero(phi.cols());
  for (const auto& tr : trajectory)
    learner.step(phi.row(tr.from).transpose(), phi.row(tr.to).transpose(), tr.reward);
  learner.step(phi.row(trajectory.back().to).transpose(), zero, terminal_reward);
  learner.episode_reset();
}

template <typename Learner, typename WeightsFn>
void prediction_run(const ExperimentConfig& config, const MarkovChain& chain, const Mat& phi,
                    const Vec& v_true, double lambda, int run, Learner& learner,
                    WeightsFn&& weights, PredictionResult& out) {
  // Trajectory stream depends only on (seed, run) so every algorithm and
  // lambda setting sees identical episodes under a shared master seed.
  Rng traj_rng = Rng::derive(config.seed, static_cast<std::uint64_t>(run));
  for (int trial = 1; trial <= config.trials; ++trial) {
    auto trajectory = sample_trajectory(chain, traj_rng);
    feed_trajectory(learner, trajectory, phi, chain.terminal_reward);
    out.rows.push_back({trial, run, lambda, config.delta, config.mu,
                        to_string(config.algorithm), rms_error(weights(), phi, v_true)});
  }
}

}  // namespace

PredictionResult run_prediction_experiment(const ExperimentConfig& config) {
  config.validate();
  if (config.experiment != Experiment::kHopworldPrediction)
    throw std::invalid_argument("run_prediction_experiment: wrong experiment type");

  const MarkovChain chain = hopworld();
  const Mat phi = hopworld_feature_matrix();
  const Vec v_true = true_hopworld_values();
  const int k = static_cast<int>(phi.cols());

  PredictionResult result;
  result.runs = config.runs;
  result.trials = config.trials;
  for (double lambda : config.lambda_grid) {
    for (int run = 0; run < config.runs; ++run) {
      switch (config.algorithm) {
        case Algorithm::kTdLambda: {
          TdLambda learner(k, config.gamma, lambda, config.schedule.build());
          prediction_run(config, chain, phi, v_true, lambda, run, learner,
                         [&] { return learner.weights(); }, result);
          break;
        }
        case Algorithm::kLstdLambda: {
          LstdLambda learner(k, config.gamma, lambda);
          prediction_run(config, chain, phi, v_true, lambda, run, learner,
                         [&] { return learner.solve().w; }, result);
          break;
        }
        case Algorithm::kRlsTdLambda: {
          RlsTd learner(k, {config.delta, config.mu, lambda, config.gamma});
          prediction_run(config, chain, phi, v_true, lambda, run, learner,
                         [&] { return learner.weights(); }, result);
          break;
        }
        default:
          throw std::invalid_argument(
              "run_prediction_experiment: control algorithm in prediction experiment");
      }
    }
  }
  return result;
}

namespace {

Critic make_control_critic(const ExperimentConfig& config, int k, double lambda) {
  switch (config.algorithm) {
    case Algorithm::kAhc:
      return Critic::td_lambda(k, config.gamma, lambda, config.schedule.build());
    case Algorithm::kFastAhc:
      return Critic::rls_td(k, {config.delta, config.mu, lambda, config.gamma});
    case Algorithm::kAhcLstd:
      return Critic::lstd(k, config.gamma, lambda);
    default:
      throw std::invalid_argument("control experiment requires ahc, fast_ahc or ahc_lstd");
  }
}

std::size_t actor_warmup(const ExperimentConfig& config) {
  return config.algorithm == Algorithm::kAhcLstd ? config.lstd_actor_warmup : 0;
}

void dump_episode_csv(const std::string& path, const std::vector<EpisodeLogRow>& log,
                      const std::string& header) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open episode dump path: " + path);
  out << header << "\n";
  char buf[64];
  for (const auto& row : log) {
    out << row.step;
    for (int i = 0; i < row.state.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", row.state[i]);
      out << ',' << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", row.action);
    out << ',' << buf << "\n";
  }
}

}  // namespace

ControlResult run_cartpole_experiment(const ExperimentConfig& config) {
  config.validate();
  if (config.experiment != Experiment::kCartpoleControl)
    throw std::invalid_argument("run_cartpole_experiment: wrong experiment type");

  const CmacFeatureMap critic_map(cartpole_critic_cmac());
  const CmacFeatureMap actor_map(cartpole_actor_cmac());
  const CartPoleParams params;
  bool dumped = false;

  ControlResult result;
  for (double lambda : config.lambda_grid) {
    for (int run = 0; run < config.runs; ++run) {
      Rng rng = Rng::derive(config.seed, static_cast<std::uint64_t>(run));
      Actor actor(actor_map.size(),
                  {config.beta, config.k1, config.k2, -params.force_bound, params.force_bound},
                  rng);
      Critic critic = make_control_critic(config, critic_map.size(), lambda);

      ControlRow row{run, lambda, config.delta, to_string(config.algorithm),
                     static_cast<double>(config.max_trials), TerminatedBy::kFailure};
      for (int trial = 1; trial <= config.max_trials; ++trial) {
        CartPoleState start{rng.uniform(-0.05, 0.05), rng.uniform(-0.05, 0.05),
                            rng.uniform(-0.05, 0.05), rng.uniform(-0.05, 0.05)};
        EpisodeOptions options;
        options.max_steps = config.success_steps;
        options.actor_warmup_updates = actor_warmup(config);
        options.record_log = !config.episode_dump_path.empty() && !dumped;
        EpisodeOutcome outcome = run_cartpole_episode(actor, critic, critic_map, actor_map,
                                                      start, params, rng, options);
        if (outcome.terminated_by == TerminatedBy::kSuccessCap) {
          row.metric = trial;
          row.terminated_by = TerminatedBy::kSuccessCap;
          if (options.record_log) {
            dump_episode_csv(config.episode_dump_path, outcome.log,
                             "step,x,x_dot,theta,theta_dot,force");
            dumped = true;
          }
          break;
        }
      }
      result.rows.push_back(row);
    }
  }
  return result;
}

ControlResult run_acrobot_experiment(const ExperimentConfig& config) {
  config.validate();
  if (config.experiment != Experiment::kAcrobotControl)
    throw std::invalid_argument("run_acrobot_experiment: wrong experiment type");

  const CmacFeatureMap critic_map(acrobot_critic_cmac());
  const CmacFeatureMap actor_map(acrobot_actor_cmac());
  const AcrobotParams params;
  bool dumped = false;

  ControlResult result;
  for (double lambda : config.lambda_grid) {
    for (int run = 0; run < config.runs; ++run) {
      Rng rng = Rng::derive(config.seed, static_cast<std::uint64_t>(run));
      Actor actor(actor_map.size(),
                  {config.beta, config.k1, config.k2, -params.torque_bound, params.torque_bound},
                  rng);
      Critic critic = make_control_critic(config, critic_map.size(), lambda);

      const AcrobotState hanging{};
      for (int trial = 1; trial <= config.acrobot_trials; ++trial) {
        EpisodeOptions options;
        options.max_steps = config.trial_step_cap;
        options.actor_warmup_updates = actor_warmup(config);
        run_acrobot_episode(actor, critic, critic_map, actor_map, hanging, params, rng,
                            options);
      }

      EpisodeOptions greedy;
      greedy.max_steps = config.greedy_step_cap;
      greedy.learn = false;
      greedy.greedy = true;
      greedy.record_log = !config.episode_dump_path.empty() && !dumped;
      EpisodeOutcome outcome = run_acrobot_episode(actor, critic, critic_map, actor_map,
                                                   hanging, params, rng, greedy);
      if (greedy.record_log && outcome.terminated_by == TerminatedBy::kGoal) {
        dump_episode_csv(config.episode_dump_path, outcome.log,
                         "step,theta1,theta2,theta1_dot,theta2_dot,torque");
        dumped = true;
      }
      result.rows.push_back({run, lambda, config.delta, to_string(config.algorithm),
                             static_cast<double>(outcome.steps), outcome.terminated_by});
    }
  }
  return result;
}

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string prediction_csv(const PredictionResult& result) {
  std::ostringstream out;
  out << "trial,run,lambda,delta,mu,algo,rms\n";
  for (const auto& r : result.rows)
    out << r.trial << ',' << r.run << ',' << fmt(r.lambda) << ',' << fmt(r.delta) << ','
        << fmt(r.mu) << ',' << r.algo << ',' << fmt(r.rms) << "\n";
  return out.str();
}

std::string control_csv(const ControlResult& result) {
  std::ostringstream out;
  out << "run,lambda,delta,algo,metric,terminated_by\n";
  for (const auto& r : result.rows)
    out << r.run << ',' << fmt(r.lambda) << ',' << fmt(r.delta) << ',' << r.algo << ','
        << fmt(r.metric) << ',' << to_string(r.terminated_by) << "\n";
  return out.str();
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> values;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) values.push_back(std::stod(item));
  }
  if (values.empty()) throw std::invalid_argument("empty numeric list");
  return values;
}

}  // namespace

void apply_config_line(ExperimentConfig& c, const std::string& key, const std::string& value) {
  if (key == "experiment") c.experiment = parse_experiment(value);
  else if (key == "algorithm" || key == "algo") c.algorithm = parse_algorithm(value);
  else if (key == "lambda" || key == "lambda_grid") c.lambda_grid = parse_double_list(value);
  else if (key == "gamma") c.gamma = std::stod(value);
  else if (key == "mu") c.mu = std::stod(value);
  else if (key == "delta") c.delta = std::stod(value);
  else if (key == "alpha0") { c.schedule.alpha0 = std::stod(value); c.schedule.fixed = false; }
  else if (key == "n0") { c.schedule.n0 = std::stod(value); c.schedule.fixed = false; }
  else if (key == "alpha") { c.schedule.alpha = std::stod(value); c.schedule.fixed = true; }
  else if (key == "beta") c.beta = std::stod(value);
  else if (key == "k1") c.k1 = std::stod(value);
  else if (key == "k2") c.k2 = std::stod(value);
  else if (key == "runs") c.runs = std::stoi(value);
  else if (key == "trials") c.trials = std::stoi(value);
  else if (key == "seed") c.seed = std::stoull(value);
  else if (key == "output" || key == "out") c.output_path = value;
  else if (key == "episode_dump") c.episode_dump_path = value;
  else if (key == "success_steps") c.success_steps = std::stol(value);
  else if (key == "max_trials") c.max_trials = std::stoi(value);
  else if (key == "acrobot_trials") c.acrobot_trials = std::stoi(value);
  else if (key == "trial_step_cap") c.trial_step_cap = std::stol(value);
  else if (key == "greedy_step_cap") c.greedy_step_cap = std::stol(value);
  else if (key == "lstd_actor_warmup") c.lstd_actor_warmup = std::stoul(value);
  else throw std::invalid_argument("unknown configuration key: " + key);
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  ExperimentConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": expected key = value");
    apply_config_line(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

}  // namespace rlstd
