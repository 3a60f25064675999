#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rlstd/harness.hpp"

namespace rlstd {

namespace {

struct CliOptions {
  std::string config_path;
  std::optional<std::string> algo;
  std::optional<std::string> lambda_list;
  std::optional<double> delta, mu, gamma, beta, alpha0, n0, alpha;
  std::optional<int> runs, trials, max_trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out, episode_dump;
};

void add_common_options(CLI::App* app, CliOptions& o) {
  app->add_option("--config", o.config_path, "flat key=value configuration file");
  app->add_option("--algo", o.algo, "algorithm name");
  app->add_option("--lambda", o.lambda_list, "comma-separated lambda values");
  app->add_option("--delta", o.delta, "variance-matrix initializing constant");
  app->add_option("--mu", o.mu, "forgetting factor");
  app->add_option("--gamma", o.gamma, "discount factor");
  app->add_option("--beta", o.beta, "actor learning factor");
  app->add_option("--alpha0", o.alpha0, "decaying schedule alpha0");
  app->add_option("--n0", o.n0, "decaying schedule N0");
  app->add_option("--alpha", o.alpha, "fixed step size");
  app->add_option("--runs", o.runs, "independent runs");
  app->add_option("--trials", o.trials, "trials per run");
  app->add_option("--max-trials", o.max_trials, "cart-pole trial cap per run");
  app->add_option("--seed", o.seed, "master seed");
  app->add_option("--out", o.out, "output CSV path (default: stdout)");
  app->add_option("--dump-episode", o.episode_dump, "per-step CSV of a final episode");
}

ExperimentConfig build_config(const CliOptions& o, Experiment experiment,
                              Algorithm default_algo) {
  ExperimentConfig c;
  if (!o.config_path.empty()) c = load_config_file(o.config_path);
  else c.algorithm = default_algo;
  c.experiment = experiment;
  if (o.algo) c.algorithm = parse_algorithm(*o.algo);
  if (o.lambda_list) apply_config_line(c, "lambda", *o.lambda_list);
  if (o.delta) c.delta = *o.delta;
  if (o.mu) c.mu = *o.mu;
  if (o.gamma) c.gamma = *o.gamma;
  if (o.beta) c.beta = *o.beta;
  if (o.alpha0) { c.schedule.alpha0 = *o.alpha0; c.schedule.fixed = false; }
  if (o.n0) { c.schedule.n0 = *o.n0; c.schedule.fixed = false; }
  if (o.alpha) { c.schedule.alpha = *o.alpha; c.schedule.fixed = true; }
  if (o.runs) c.runs = *o.runs;
  if (o.trials) c.trials = *o.trials;
  if (o.max_trials) c.max_trials = *o.max_trials;
  if (o.seed) c.seed = *o.seed;
  if (o.out) c.output_path = *o.out;
  if (o.episode_dump) c.episode_dump_path = *o.episode_dump;
  c.validate();
  return c;
}

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output path: " + path);
  out << payload;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Recursive least-squares temporal-difference learning experiments"};
  app.require_subcommand(1);

  CliOptions predict_opts, cartpole_opts, acrobot_opts;
  double oracle_lambda = 0.5, oracle_gamma = 1.0;
  std::string bound_lambdas = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,1";
  double bound_gamma = 0.95;

  CLI::App* predict = app.add_subcommand("predict", "hop-chain value prediction sweep");
  add_common_options(predict, predict_opts);
  CLI::App* cartpole = app.add_subcommand("cartpole", "cart-pole balancing control runs");
  add_common_options(cartpole, cartpole_opts);
  CLI::App* acrobot = app.add_subcommand("acrobot", "acrobot swing-up control runs");
  add_common_options(acrobot, acrobot_opts);
  CLI::App* oracle = app.add_subcommand("oracle", "analytic hop-chain fixed point");
  oracle->add_option("--lambda", oracle_lambda, "trace decay");
  oracle->add_option("--gamma", oracle_gamma, "discount factor");
  CLI::App* bound = app.add_subcommand("bound", "approximation-error bound table");
  bound->add_option("--lambda", bound_lambdas, "comma-separated lambda values");
  bound->add_option("--gamma", bound_gamma, "discount factor (< 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (predict->parsed()) {
      ExperimentConfig config = build_config(predict_opts, Experiment::kHopworldPrediction,
                                             Algorithm::kRlsTdLambda);
      write_output(config.output_path, prediction_csv(run_prediction_experiment(config)));
    } else if (cartpole->parsed()) {
      ExperimentConfig config = build_config(cartpole_opts, Experiment::kCartpoleControl,
                                             Algorithm::kFastAhc);
      if (!cartpole_opts.gamma) config.gamma = 0.95;
      if (!cartpole_opts.lambda_list && cartpole_opts.config_path.empty())
        config.lambda_grid = {0.7};
      if (!cartpole_opts.runs && cartpole_opts.config_path.empty()) config.runs = 5;
      write_output(config.output_path, control_csv(run_cartpole_experiment(config)));
    } else if (acrobot->parsed()) {
      ExperimentConfig config = build_config(acrobot_opts, Experiment::kAcrobotControl,
                                             Algorithm::kFastAhc);
      if (!acrobot_opts.gamma) config.gamma = 0.90;
      if (!acrobot_opts.beta) config.beta = 0.2;
      if (!acrobot_opts.delta && acrobot_opts.config_path.empty()) config.delta = 300.0;
      if (!acrobot_opts.lambda_list && acrobot_opts.config_path.empty())
        config.lambda_grid = {0.6};
      if (!acrobot_opts.runs && acrobot_opts.config_path.empty()) config.runs = 5;
      write_output(config.output_path, control_csv(run_acrobot_experiment(config)));
    } else if (oracle->parsed()) {
      FixedPoint fp = exact_fixed_point(hopworld(), hopworld_feature_matrix(), oracle_lambda,
                                        oracle_gamma);
      std::printf("W* =");
      for (int i = 0; i < fp.w.size(); ++i) std::printf(" %.12g", fp.w[i]);
      std::printf("\n");
    } else if (bound->parsed()) {
      MarkovChain chain = hopworld();
      Mat phi = hopworld_feature_matrix();
      std::printf("lambda,lhs,rhs,holds\n");
      std::stringstream ss(bound_lambdas);
      std::string item;
      while (std::getline(ss, item, ',')) {
        double l = std::stod(item);
        BoundCheck bc = error_bound_check(chain, phi, l, bound_gamma);
        std::printf("%.17g,%.17g,%.17g,%d\n", l, bc.lhs, bc.rhs, bc.holds ? 1 : 0);
      }
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace rlstd
