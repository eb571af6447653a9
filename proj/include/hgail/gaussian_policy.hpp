#pragma once

#include <Eigen/Dense>

#include "hgail/mlp.hpp"
#include "hgail/rng.hpp"

namespace hgail {

// Diagonal-Gaussian policy: the mean is an MLP of state||goal, the covariance
// is a fixed scalar variance shared across action dimensions. An optional
// learnable per-dimension log-stddev mode exists so the entropy regularizer
// can act; it is off by default.
struct GaussianPolicy {
  MlpParams mean_net;
  double covariance = 1.0;
  bool learnable_std = false;
  Eigen::VectorXd log_std;  // per-dimension, used only when learnable_std

  int action_dim() const { return mean_net.output_dim(); }
  // per-dimension variances under the active mode
  Eigen::VectorXd variances() const;
};

GaussianPolicy make_policy(const std::vector<int>& dims, double covariance, Rng& rng,
                           bool learnable_std = false);

Eigen::VectorXd policy_mean(const GaussianPolicy& policy, const Eigen::VectorXd& state_goal);
Eigen::MatrixXd policy_mean_batch(const GaussianPolicy& policy, const Eigen::MatrixXd& state_goals,
                                  BatchCache* cache = nullptr);

double policy_log_prob(const GaussianPolicy& policy, const Eigen::VectorXd& state_goal,
                       const Eigen::VectorXd& action);

// log-density given an already computed mean; identical value to
// policy_log_prob when the mean came from the same parameters
double log_prob_from_mean(const GaussianPolicy& policy, const Eigen::VectorXd& mean,
                          const Eigen::VectorXd& action);

Eigen::VectorXd log_probs_from_means(const GaussianPolicy& policy, const Eigen::MatrixXd& means,
                                     const Eigen::MatrixXd& actions);

Eigen::VectorXd sample_action(const GaussianPolicy& policy, const Eigen::VectorXd& mean, Rng& rng);

// Differential entropy; constant in the mean parameters, so its gradient with
// respect to the mean network is identically zero.
double policy_entropy(const GaussianPolicy& policy);

}  // namespace hgail
