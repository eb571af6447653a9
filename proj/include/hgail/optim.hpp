#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "hgail/gaussian_policy.hpp"
#include "hgail/hindsight.hpp"
#include "hgail/mlp.hpp"
#include "hgail/rollout.hpp"

namespace hgail {

// scalar critic over state||goal, 2x64 tanh
struct ValueNet {
  MlpParams net;
};

ValueNet make_value_net(int input_dim, Rng& rng);

struct PpoConfig {
  double clip_ratio = 0.2;
  double gae_lambda = 0.95;
  double discount = 0.98;
  int epochs_per_batch = 5;
  int minibatch_size = 128;
  double learning_rate = 0.001;
  double entropy_weight = 0.01;       // inert under fixed covariance
  bool normalize_advantages = true;
};

void validate(const PpoConfig& config);

struct AdvantageBatch {
  Eigen::MatrixXd features;           // state||goal rows
  Eigen::MatrixXd actions;
  Eigen::VectorXd advantages;
  Eigen::VectorXd value_targets;
  Eigen::VectorXd behavior_log_probs;
  bool normalized = false;
};

// GAE(discount, lambda) over per-step rewards, one reward vector per
// trajectory. The fixed horizon is a time limit, not a true termination, so
// the last step bootstraps from the value of the terminal state. Value
// targets are advantage + value before any normalization. The action columns
// hold the raw sampled actions so ratios against the stored behavior
// log-probs are exact.
AdvantageBatch compute_advantages(const TrajectoryBatch& batch,
                                  const std::vector<Eigen::VectorXd>& rewards,
                                  const ValueNet& value, const PpoConfig& config);

struct PpoDiagnostics {
  double surrogate_loss = 0.0;
  double value_loss = 0.0;
  double clip_fraction = 0.0;
  double entropy = 0.0;
  bool ok = true;  // false if a non-finite gradient aborted the update
};

// Clipped-surrogate PPO: maximizes min(ratio*A, clip(ratio)*A) plus the
// entropy bonus, regresses the value net onto the targets, Adam on both.
// At the anchor point (ratio == 1) the surrogate gradient equals the plain
// score-function policy gradient.
PpoDiagnostics ppo_update(GaussianPolicy& policy, ValueNet& value, const AdvantageBatch& batch,
                          const PpoConfig& config, AdamState& policy_adam, AdamState& value_adam,
                          Rng& rng);

// Behavior-cloning pretraining: plain minibatch gradient ascent on the mean
// log-likelihood of (state||goal, action) pairs. With a fixed covariance this
// is mean-squared-error regression of the mean network onto the actions.
void mle_pretrain(GaussianPolicy& policy, const FeaturePairs& data, int steps, double lr,
                  int minibatch_size, Rng& rng);

void mle_pretrain(GaussianPolicy& policy, std::span<const RelabeledTrajectory> expert_like,
                  int steps, double lr, int minibatch_size, Rng& rng);

// mean log-likelihood of the pairs under the policy, and its gradient
std::pair<double, Gradient> mle_loss_and_grad(const GaussianPolicy& policy,
                                              const FeaturePairs& data);

// mean squared error of the value net against targets, and its gradient
std::pair<double, Gradient> value_loss_and_grad(const ValueNet& value,
                                                const Eigen::MatrixXd& features,
                                                const Eigen::VectorXd& targets);

// clipped-surrogate loss (negated objective) and gradient for one minibatch;
// exposed for gradient verification
struct SurrogateResult {
  double loss = 0.0;
  Gradient grad;
  double clip_fraction = 0.0;
  Eigen::VectorXd log_std_grad;  // empty unless learnable_std
};

SurrogateResult ppo_surrogate_loss_and_grad(const GaussianPolicy& policy,
                                            const Eigen::MatrixXd& features,
                                            const Eigen::MatrixXd& actions,
                                            const Eigen::VectorXd& advantages,
                                            const Eigen::VectorXd& behavior_log_probs,
                                            const PpoConfig& config);

}  // namespace hgail
