#pragma once

#include <cstddef>

#include "rlstd/features.hpp"

namespace rlstd {

// z' = gamma*lambda*z + phi.
Vec trace_update(const Vec& z, const Vec& phi, double gamma, double lambda);

// Either the decaying schedule alpha_0 (N_0 + 1)/(N_0 + n) or a constant.
class StepSizeSchedule {
 public:
  static StepSizeSchedule decaying(double alpha0, double n0);
  static StepSizeSchedule constant(double alpha);
  double at(std::size_t n) const;

 private:
  StepSizeSchedule() = default;
  bool fixed_ = false;
  double alpha0_ = 0.0;
  double n0_ = 0.0;
};

// Gradient-style multi-step temporal-difference learner over linear
// features. Weights persist across episodes; traces reset between them.
class TdLambda {
 public:
  TdLambda(int k, double gamma, double lambda, StepSizeSchedule schedule);

  // One update. Terminal transitions must pass a zero `phi_next`.
  void step(const Vec& phi_t, const Vec& phi_next, double reward);
  void episode_reset();

  const Vec& weights() const { return w_; }
  const Vec& trace() const { return z_; }
  double value(const Vec& phi) const { return w_.dot(phi); }
  std::size_t updates() const { return n_; }

 private:
  Vec w_, z_;
  double gamma_, lambda_;
  StepSizeSchedule schedule_;
  std::size_t n_ = 0;
};

struct LstdSolveResult {
  Vec w;
  bool regularized = false;  // true when the dense solve needed an eps*I ridge
};

// Dense solve of A w = b. Singular or badly conditioned systems
// (condition estimate above 1e12) are solved with an added ridge of
// 1e-8 * ||A||_inf and flagged. Non-finite inputs throw.
LstdSolveResult lstd_solve(const Mat& a, const Vec& b);

// Batch least-squares learner: accumulates the rank-one statistics
// A += z'(phi_t - gamma*phi_next)^T, b += z'*r and solves on demand.
class LstdLambda {
 public:
  LstdLambda(int k, double gamma, double lambda);

  void step(const Vec& phi_t, const Vec& phi_next, double reward);
  void episode_reset();
  LstdSolveResult solve() const { return lstd_solve(a_, b_); }

  const Mat& a_matrix() const { return a_; }
  const Vec& b_vector() const { return b_; }
  const Vec& trace() const { return z_; }

 private:
  Mat a_;
  Vec b_, z_;
  double gamma_, lambda_;
};

struct RlsTdConfig {
  double delta = 500.0;  // P_0 = delta * I
  double mu = 1.0;       // forgetting factor in (0, 1]
  double lambda = 0.3;
  double gamma = 1.0;
};

// Recursive least-squares multi-step temporal-difference learner. Each
// step performs the gain / weight / variance-matrix updates
//   K = P z' / (mu + dphi^T P z')
//   W' = W + K (r - dphi^T W)
//   P' = (P - K dphi^T P) / mu
// with dphi = phi_t - gamma*phi_next and z' the freshly updated trace.
class RlsTd {
 public:
  RlsTd(int k, RlsTdConfig config);
  RlsTd(const Vec& w0, RlsTdConfig config);

  // Throws std::runtime_error when the gain denominator falls below
  // 1e-12 in magnitude (the step is rejected, state untouched) and
  // std::runtime_error on non-finite intermediates.
  void step(const Vec& phi_t, const Vec& phi_next, double reward);
  void episode_reset();

  const Vec& weights() const { return w_; }
  const Mat& variance() const { return p_; }
  const Vec& trace() const { return z_; }
  double value(const Vec& phi) const { return w_.dot(phi); }
  const RlsTdConfig& config() const { return config_; }

 private:
  Vec w_, z_;
  Mat p_;
  RlsTdConfig config_;
};

}  // namespace rlstd
