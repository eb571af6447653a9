#include "hgail/gaussian_policy.hpp"

#include <cmath>
#include <stdexcept>

#include "hgail/numeric.hpp"

namespace hgail {

Eigen::VectorXd GaussianPolicy::variances() const {
  if (learnable_std) return (2.0 * log_std.array()).exp();
  return Eigen::VectorXd::Constant(action_dim(), covariance);
}

GaussianPolicy make_policy(const std::vector<int>& dims, double covariance, Rng& rng,
                           bool learnable_std) {
  if (covariance <= 0.0) throw std::invalid_argument("policy covariance must be positive");
  GaussianPolicy p;
  p.mean_net = make_mlp(dims, rng);
  p.covariance = covariance;
  p.learnable_std = learnable_std;
  if (learnable_std)
    p.log_std = Eigen::VectorXd::Constant(dims.back(), 0.5 * std::log(covariance));
  return p;
}

Eigen::VectorXd policy_mean(const GaussianPolicy& policy, const Eigen::VectorXd& state_goal) {
  return forward(policy.mean_net, state_goal);
}

Eigen::MatrixXd policy_mean_batch(const GaussianPolicy& policy, const Eigen::MatrixXd& state_goals,
                                  BatchCache* cache) {
  return forward_batch(policy.mean_net, state_goals, cache);
}

double log_prob_from_mean(const GaussianPolicy& policy, const Eigen::VectorXd& mean,
                          const Eigen::VectorXd& action) {
  if (mean.size() != action.size())
    throw std::invalid_argument("log_prob: action dim does not match mean dim");
  const Eigen::ArrayXd var = policy.variances().array();
  const Eigen::ArrayXd diff = (action - mean).array();
  const double k = static_cast<double>(action.size());
  return -0.5 * (k * std::log(kTwoPi) + var.log().sum() + (diff.square() / var).sum());
}

double policy_log_prob(const GaussianPolicy& policy, const Eigen::VectorXd& state_goal,
                       const Eigen::VectorXd& action) {
  return log_prob_from_mean(policy, policy_mean(policy, state_goal), action);
}

Eigen::VectorXd log_probs_from_means(const GaussianPolicy& policy, const Eigen::MatrixXd& means,
                                     const Eigen::MatrixXd& actions) {
  if (means.rows() != actions.rows() || means.cols() != actions.cols())
    throw std::invalid_argument("log_probs: means/actions shape mismatch");
  const Eigen::ArrayXd var = policy.variances().array();
  const double k = static_cast<double>(means.cols());
  const double base = -0.5 * (k * std::log(kTwoPi) + var.log().sum());
  const Eigen::ArrayXXd diff2 = (actions - means).array().square();
  Eigen::VectorXd out(means.rows());
  for (Eigen::Index r = 0; r < means.rows(); ++r)
    out(r) = base - 0.5 * (diff2.row(r).transpose() / var).sum();
  return out;
}

Eigen::VectorXd sample_action(const GaussianPolicy& policy, const Eigen::VectorXd& mean, Rng& rng) {
  const Eigen::ArrayXd sd = policy.variances().array().sqrt();
  Eigen::VectorXd a(mean.size());
  for (Eigen::Index i = 0; i < mean.size(); ++i) a(i) = mean(i) + sd(i) * rng.normal();
  return a;
}

double policy_entropy(const GaussianPolicy& policy) {
  const double k = static_cast<double>(policy.action_dim());
  return 0.5 * k * (1.0 + std::log(kTwoPi)) + 0.5 * policy.variances().array().log().sum();
}

}  // namespace hgail
