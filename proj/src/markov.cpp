#include "rlstd/markov.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rlstd {

bool MarkovChain::has_absorbing() const {
  for (bool a : absorbing)
    if (a) return true;
  return false;
}

Vec MarkovChain::expected_rewards() const {
  Vec r_bar = Vec::Zero(n_states);
  for (int i = 0; i < n_states; ++i) {
    if (absorbing[i]) {
      r_bar[i] = terminal_reward;
    } else {
      for (int j = 0; j < n_states; ++j) r_bar[i] += transition(i, j) * reward(i, j);
    }
  }
  return r_bar;
}

void MarkovChain::validate() const {
  if (n_states < 1) throw std::invalid_argument("MarkovChain: empty state space");
  if (transition.rows() != n_states || transition.cols() != n_states ||
      reward.rows() != n_states || reward.cols() != n_states ||
      static_cast<int>(absorbing.size()) != n_states || initial.size() != n_states)
    throw std::invalid_argument("MarkovChain: inconsistent dimensions");
  for (int i = 0; i < n_states; ++i) {
    double row_sum = 0.0;
    for (int j = 0; j < n_states; ++j) {
      double p = transition(i, j);
      if (p < 0.0 || !std::isfinite(p))
        throw std::invalid_argument("MarkovChain: invalid transition probability");
      if (!std::isfinite(reward(i, j)))
        throw std::invalid_argument("MarkovChain: non-finite reward");
      row_sum += p;
    }
    if (std::abs(row_sum - 1.0) > 1e-12)
      throw std::invalid_argument("MarkovChain: row " + std::to_string(i) +
                                  " is not stochastic");
    if (absorbing[i] && std::abs(transition(i, i) - 1.0) > 1e-12)
      throw std::invalid_argument("MarkovChain: absorbing state " + std::to_string(i) +
                                  " must self-loop");
  }
  double init_sum = initial.sum();
  if (initial.minCoeff() < 0.0 || std::abs(init_sum - 1.0) > 1e-12)
    throw std::invalid_argument("MarkovChain: initial distribution is not a distribution");
}

MarkovChain hopworld() {
  MarkovChain chain;
  chain.n_states = 13;
  chain.transition = Mat::Zero(13, 13);
  chain.reward = Mat::Constant(13, 13, -3.0);
  chain.absorbing.assign(13, false);
  chain.initial = Vec::Zero(13);
  chain.initial[12] = 1.0;
  chain.absorbing[0] = true;
  chain.transition(0, 0) = 1.0;
  chain.reward(0, 0) = 0.0;
  chain.transition(1, 0) = 1.0;  // state 1 cannot hop two; forced step
  chain.reward(1, 0) = -2.0;
  for (int i = 2; i <= 12; ++i) {
    chain.transition(i, i - 1) = 0.5;
    chain.transition(i, i - 2) = 0.5;
  }
  chain.validate();
  return chain;
}

Vec true_hopworld_values() {
  Vec v(13);
  for (int i = 0; i < 13; ++i) v[i] = -2.0 * i;
  return v;
}

namespace {

int sample_index(const Vec& weights, Rng& rng) {
  double u = rng.uniform01();
  double acc = 0.0;
  for (int i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) return i;
  }
  return static_cast<int>(weights.size()) - 1;
}

// P with absorbing rows zeroed: the sub-stochastic step matrix of the
// episodic process whose terminal successor has zero features.
Mat episodic_step_matrix(const MarkovChain& chain) {
  Mat q = chain.transition;
  for (int i = 0; i < chain.n_states; ++i)
    if (chain.absorbing[i]) q.row(i).setZero();
  return q;
}

Vec visit_weights(const MarkovChain& chain) {
  const int n = chain.n_states;
  if (chain.has_absorbing()) {
    // Expected visits per episode: (I - Q^T)^-1 applied to the initial
    // distribution, then normalized.
    Mat q = episodic_step_matrix(chain);
    Mat lhs = Mat::Identity(n, n) - q.transpose();
    Vec visits = lhs.partialPivLu().solve(chain.initial);
    return visits / visits.sum();
  }
  // Ergodic case: unique stationary distribution of P.
  Mat lhs = chain.transition.transpose() - Mat::Identity(n, n);
  lhs.row(n - 1).setOnes();
  Vec rhs = Vec::Zero(n);
  rhs[n - 1] = 1.0;
  Vec pi = lhs.partialPivLu().solve(rhs);
  return pi;
}

}  // namespace

std::vector<Transition> sample_trajectory(const MarkovChain& chain, Rng& rng,
                                          std::size_t max_steps) {
  if (!chain.has_absorbing())
    throw std::invalid_argument("sample_trajectory: chain has no absorbing state");
  std::vector<Transition> trajectory;
  int state = sample_index(chain.initial, rng);
  for (std::size_t t = 0; t < max_steps; ++t) {
    int next = sample_index(chain.transition.row(state).transpose(), rng);
    trajectory.push_back({state, next, chain.reward(state, next), chain.absorbing[next]});
    if (chain.absorbing[next]) return trajectory;
    state = next;
  }
  throw std::runtime_error("sample_trajectory: exceeded max_steps without absorbing");
}

FixedPoint exact_fixed_point(const MarkovChain& chain, const Mat& phi, double lambda,
                             double gamma) {
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("exact_fixed_point: lambda must be in [0, 1]");
  if (gamma <= 0.0 || gamma > 1.0)
    throw std::invalid_argument("exact_fixed_point: gamma must be in (0, 1]");
  if (phi.rows() != chain.n_states)
    throw std::invalid_argument("exact_fixed_point: featurizer row count mismatch");

  const int n = chain.n_states;
  const Mat q = episodic_step_matrix(chain);
  const Vec d = visit_weights(chain);
  const Vec r_bar = chain.expected_rewards();

  Mat trace_resolvent = Mat::Identity(n, n) - gamma * lambda * q;
  Eigen::FullPivLU<Mat> resolvent_lu(trace_resolvent);
  if (!resolvent_lu.isInvertible())
    throw std::invalid_argument(
        "exact_fixed_point: (I - gamma*lambda*P) is singular on the recurrent part");

  Mat weighted = d.asDiagonal() * resolvent_lu.solve(Mat::Identity(n, n));
  FixedPoint fp;
  fp.a = phi.transpose() * weighted * (Mat::Identity(n, n) - gamma * q) * phi;
  fp.b = phi.transpose() * weighted * r_bar;
  fp.state_weights = d;

  Eigen::FullPivLU<Mat> a_lu(fp.a);
  if (!a_lu.isInvertible())
    throw std::invalid_argument("exact_fixed_point: A is rank-deficient (rank " +
                                std::to_string(a_lu.rank()) + " of " +
                                std::to_string(fp.a.rows()) + ")");
  fp.w = a_lu.solve(fp.b);
  return fp;
}

Vec true_values(const MarkovChain& chain, double gamma) {
  const int n = chain.n_states;
  Mat q = episodic_step_matrix(chain);
  Mat lhs = Mat::Identity(n, n) - gamma * q;
  Eigen::FullPivLU<Mat> lu(lhs);
  if (!lu.isInvertible())
    throw std::invalid_argument("true_values: (I - gamma*P) is singular");
  return lu.solve(chain.expected_rewards());
}

BoundCheck error_bound_check(const MarkovChain& chain, const Mat& phi, double lambda,
                             double gamma) {
  if (gamma >= 1.0)
    throw std::domain_error("error_bound_check: requires gamma < 1");
  FixedPoint fp = exact_fixed_point(chain, phi, lambda, gamma);
  Vec v_true = true_values(chain, gamma);
  Mat d = fp.state_weights.asDiagonal();
  Mat projector = phi * (phi.transpose() * d * phi).partialPivLu().solve(phi.transpose() * d);

  auto d_norm = [&](const Vec& x) { return std::sqrt(x.dot(d * x)); };
  BoundCheck result;
  result.lhs = d_norm(phi * fp.w - v_true);
  result.rhs = (1.0 - lambda * gamma) / (1.0 - gamma) * d_norm(projector * v_true - v_true);
  result.holds = result.lhs <= result.rhs + 1e-9;
  return result;
}

}  // namespace rlstd
