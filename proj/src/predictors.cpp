#include "rlstd/predictors.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace rlstd {

Vec trace_update(const Vec& z, const Vec& phi, double gamma, double lambda) {
  if (z.size() != phi.size())
    throw std::invalid_argument("trace_update: dimension mismatch");
  return gamma * lambda * z + phi;
}

StepSizeSchedule StepSizeSchedule::decaying(double alpha0, double n0) {
  if (alpha0 <= 0.0 || n0 <= 0.0)
    throw std::invalid_argument("StepSizeSchedule: alpha0 and N0 must be positive");
  StepSizeSchedule s;
  s.alpha0_ = alpha0;
  s.n0_ = n0;
  return s;
}

StepSizeSchedule StepSizeSchedule::constant(double alpha) {
  if (alpha <= 0.0) throw std::invalid_argument("StepSizeSchedule: alpha must be positive");
  StepSizeSchedule s;
  s.fixed_ = true;
  s.alpha0_ = alpha;
  return s;
}

double StepSizeSchedule::at(std::size_t n) const {
  if (fixed_) return alpha0_;
  return alpha0_ * (n0_ + 1.0) / (n0_ + static_cast<double>(n));
}

TdLambda::TdLambda(int k, double gamma, double lambda, StepSizeSchedule schedule)
    : w_(Vec::Zero(k)), z_(Vec::Zero(k)), gamma_(gamma), lambda_(lambda),
      schedule_(schedule) {}

void TdLambda::step(const Vec& phi_t, const Vec& phi_next, double reward) {
  if (phi_t.size() != w_.size() || phi_next.size() != w_.size())
    throw std::invalid_argument("TdLambda::step: dimension mismatch");
  z_ = trace_update(z_, phi_t, gamma_, lambda_);
  double td_error = reward + gamma_ * w_.dot(phi_next) - w_.dot(phi_t);
  w_ += schedule_.at(n_) * td_error * z_;
  ++n_;
}

void TdLambda::episode_reset() { z_.setZero(); }

LstdSolveResult lstd_solve(const Mat& a, const Vec& b) {
  if (a.rows() != a.cols() || a.rows() != b.size())
    throw std::invalid_argument("lstd_solve: A must be square and match b");
  if (!a.allFinite() || !b.allFinite())
    throw std::invalid_argument("lstd_solve: non-finite entries");

  Eigen::FullPivLU<Mat> lu(a);
  LstdSolveResult result;
  bool bad = !lu.isInvertible();
  if (!bad) {
    // Condition estimate from the pivots of the full-pivot factorization.
    Vec diag = lu.matrixLU().diagonal().cwiseAbs();
    bad = diag.minCoeff() <= 0.0 || diag.maxCoeff() / diag.minCoeff() > 1e12;
  }
  if (bad) {
    double eps = 1e-8 * a.cwiseAbs().rowwise().sum().maxCoeff();
    if (eps <= 0.0) eps = 1e-8;
    Mat ridged = a + eps * Mat::Identity(a.rows(), a.cols());
    result.w = ridged.partialPivLu().solve(b);
    result.regularized = true;
  } else {
    result.w = lu.solve(b);
  }
  return result;
}

LstdLambda::LstdLambda(int k, double gamma, double lambda)
    : a_(Mat::Zero(k, k)), b_(Vec::Zero(k)), z_(Vec::Zero(k)), gamma_(gamma),
      lambda_(lambda) {}

void LstdLambda::step(const Vec& phi_t, const Vec& phi_next, double reward) {
  if (phi_t.size() != b_.size() || phi_next.size() != b_.size())
    throw std::invalid_argument("LstdLambda::step: dimension mismatch");
  z_ = trace_update(z_, phi_t, gamma_, lambda_);
  a_ += z_ * (phi_t - gamma_ * phi_next).transpose();
  b_ += z_ * reward;
}

void LstdLambda::episode_reset() { z_.setZero(); }

RlsTd::RlsTd(int k, RlsTdConfig config) : RlsTd(Vec::Zero(k), config) {}

RlsTd::RlsTd(const Vec& w0, RlsTdConfig config)
    : w_(w0), z_(Vec::Zero(w0.size())), config_(config) {
  if (config_.delta <= 0.0) throw std::invalid_argument("RlsTd: delta must be positive");
  if (config_.mu <= 0.0 || config_.mu > 1.0)
    throw std::invalid_argument("RlsTd: mu must be in (0, 1]");
  p_ = config_.delta * Mat::Identity(w0.size(), w0.size());
}

void RlsTd::step(const Vec& phi_t, const Vec& phi_next, double reward) {
  if (phi_t.size() != w_.size() || phi_next.size() != w_.size())
    throw std::invalid_argument("RlsTd::step: dimension mismatch");
  const Vec z_new = trace_update(z_, phi_t, config_.gamma, config_.lambda);
  const Vec dphi = phi_t - config_.gamma * phi_next;

  const Vec pz = p_ * z_new;
  const double denom = config_.mu + dphi.dot(pz);
  if (std::abs(denom) < 1e-12)
    throw std::runtime_error("RlsTd::step: near-singular update rejected (|denominator| = " +
                             std::to_string(std::abs(denom)) + ")");
  const Vec gain = pz / denom;
  const Vec w_new = w_ + gain * (reward - dphi.dot(w_));
  const Mat p_new = (p_ - gain * (dphi.transpose() * p_)) / config_.mu;
  if (!w_new.allFinite() || !p_new.allFinite())
    throw std::runtime_error("RlsTd::step: non-finite intermediate");

  z_ = z_new;
  w_ = w_new;
  p_ = p_new;
}

void RlsTd::episode_reset() { z_.setZero(); }

}  // namespace rlstd
