#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rlstd/actor_critic.hpp"
#include "rlstd/markov.hpp"
#include "rlstd/predictors.hpp"

namespace rlstd {

enum class Experiment { kHopworldPrediction, kCartpoleControl, kAcrobotControl };
enum class Algorithm { kTdLambda, kLstdLambda, kRlsTdLambda, kAhc, kFastAhc, kAhcLstd };

std::string to_string(Experiment e);
std::string to_string(Algorithm a);
std::string to_string(TerminatedBy t);
Experiment parse_experiment(const std::string& name);
Algorithm parse_algorithm(const std::string& name);

struct ScheduleConfig {
  bool fixed = false;
  double alpha0 = 0.01;
  double n0 = 1e6;      // decaying form alpha0 (N0+1)/(N0+n)
  double alpha = 0.01;  // fixed form

  StepSizeSchedule build() const;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::kHopworldPrediction;
  Algorithm algorithm = Algorithm::kRlsTdLambda;
  std::vector<double> lambda_grid = {0.3};
  double gamma = 1.0;
  double mu = 1.0;
  double delta = 500.0;
  ScheduleConfig schedule;
  double beta = 0.5;
  double k1 = 0.4;
  double k2 = 0.5;
  int runs = 20;
  int trials = 200;
  std::uint64_t seed = 0;
  std::string output_path;        // empty = stdout
  std::string episode_dump_path;  // optional per-step trace of a final episode

  // Control-task settings.
  long success_steps = 120000;      // cart-pole balancing target
  int max_trials = 200;             // cart-pole trial cap per run
  int acrobot_trials = 50;          // learning trials before the greedy test
  long trial_step_cap = 30000;      // acrobot learning-trial step cap
  long greedy_step_cap = 30000;     // acrobot greedy-rollout step cap
  std::size_t lstd_actor_warmup = 60;

  void validate() const;  // throws std::invalid_argument
};

// sqrt(mean_i (phi(i)^T w - v*(i))^2) over all chain states.
double rms_error(const Vec& w, const Mat& phi, const Vec& true_values);

struct PredictionRow {
  int trial = 0;  // 1-based
  int run = 0;
  double lambda = 0.0;
  double delta = 0.0;
  double mu = 0.0;
  std::string algo;
  double rms = 0.0;
};

struct PredictionResult {
  std::vector<PredictionRow> rows;
  int runs = 0;
  int trials = 0;

  // Mean over runs of the RMS error at one trial (1-based).
  double mean_rms_at(double lambda, int trial) const;
  // Mean over runs and the first n trials.
  double mean_rms_first(double lambda, int n) const;
};

struct ControlRow {
  int run = 0;
  double lambda = 0.0;
  double delta = 0.0;
  std::string algo;
  double metric = 0.0;  // trials-to-success (cart-pole) or greedy steps-to-goal
  TerminatedBy terminated_by = TerminatedBy::kFailure;
};

struct ControlResult {
  std::vector<ControlRow> rows;
};

PredictionResult run_prediction_experiment(const ExperimentConfig& config);
ControlResult run_cartpole_experiment(const ExperimentConfig& config);
ControlResult run_acrobot_experiment(const ExperimentConfig& config);

std::string prediction_csv(const PredictionResult& result);
std::string control_csv(const ControlResult& result);

// Flat key = value configuration file; '#' starts a comment.
ExperimentConfig load_config_file(const std::string& path);
void apply_config_line(ExperimentConfig& config, const std::string& key,
                       const std::string& value);

// Full command-line entry point (subcommands predict / cartpole /
// acrobot / oracle / bound). Returns the process exit status: 0 on
// success, 2 on configuration errors, 1 on runtime errors.
int cli_main(int argc, const char* const* argv);

}  // namespace rlstd
