#include "hgail/optim.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hgail/numeric.hpp"

namespace hgail {

ValueNet make_value_net(int input_dim, Rng& rng) {
  return ValueNet{make_mlp({input_dim, 64, 64, 1}, rng)};
}

void validate(const PpoConfig& config) {
  if (config.clip_ratio <= 0.0 || config.clip_ratio >= 1.0)
    throw std::invalid_argument("ppo: clip_ratio must lie in (0,1)");
  if (config.discount <= 0.0 || config.discount > 1.0)
    throw std::invalid_argument("ppo: discount must lie in (0,1]");
  if (config.gae_lambda < 0.0 || config.gae_lambda > 1.0)
    throw std::invalid_argument("ppo: gae_lambda must lie in [0,1]");
  if (config.epochs_per_batch < 1 || config.minibatch_size < 1)
    throw std::invalid_argument("ppo: epochs and minibatch size must be positive");
  if (config.learning_rate <= 0.0) throw std::invalid_argument("ppo: learning rate must be positive");
}

AdvantageBatch compute_advantages(const TrajectoryBatch& batch,
                                  const std::vector<Eigen::VectorXd>& rewards,
                                  const ValueNet& value, const PpoConfig& config) {
  validate(config);
  if (rewards.size() != batch.trajectories.size())
    throw std::invalid_argument("compute_advantages: one reward vector per trajectory required");
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    if (rewards[i].size() != batch.trajectories[i].horizon())
      throw std::invalid_argument("compute_advantages: reward length does not match horizon");
  }

  AdvantageBatch out;
  const Task task = batch.trajectories.front().task;
  const int feat_dim = observation_dim(task) + 3;
  const Eigen::Index n = batch.total_steps();
  const auto n_traj = batch.trajectories.size();
  out.features.resize(n, feat_dim);
  out.actions.resize(n, 4);
  out.advantages.resize(n);
  out.value_targets.resize(n);
  out.behavior_log_probs.resize(n);

  // one extra feature row per trajectory for its terminal state
  Eigen::MatrixXd terminal_features(n_traj, feat_dim);
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < n_traj; ++i) {
    const auto& traj = batch.trajectories[i];
    for (const auto& tr : traj.transitions) {
      out.features.row(row) = state_goal_vector(tr, task).transpose();
      out.actions.row(row) = tr.action.delta.transpose();  // raw sampled action
      out.behavior_log_probs(row) = tr.log_prob_behavior;
      ++row;
    }
    const auto& last = traj.transitions.back();
    const Eigen::VectorXd obs = observation_vector(last.next_state, task);
    terminal_features.row(i).head(obs.size()) = obs.transpose();
    terminal_features.row(i).tail(3) = last.goal.target.transpose();
  }

  const Eigen::VectorXd values = forward_batch(value.net, out.features).col(0);
  const Eigen::VectorXd terminal_values = forward_batch(value.net, terminal_features).col(0);

  row = 0;
  for (std::size_t i = 0; i < n_traj; ++i) {
    const int T = batch.trajectories[i].horizon();
    // backward GAE recursion; the horizon is a time limit rather than a true
    // termination, so the final step bootstraps from the terminal state value
    double gae = 0.0;
    for (int t = T - 1; t >= 0; --t) {
      const double v_t = values(row + t);
      const double v_next = (t + 1 < T) ? values(row + t + 1) : terminal_values(i);
      const double delta = rewards[i](t) + config.discount * v_next - v_t;
      gae = delta + config.discount * config.gae_lambda * gae;
      out.advantages(row + t) = gae;
      out.value_targets(row + t) = gae + v_t;
    }
    row += T;
  }

  if (config.normalize_advantages && n > 1) {
    const double mean = out.advantages.mean();
    const double sd = std::sqrt((out.advantages.array() - mean).square().mean());
    out.advantages = (out.advantages.array() - mean) / (sd + 1e-8);
    out.normalized = true;
  }
  return out;
}

SurrogateResult ppo_surrogate_loss_and_grad(const GaussianPolicy& policy,
                                            const Eigen::MatrixXd& features,
                                            const Eigen::MatrixXd& actions,
                                            const Eigen::VectorXd& advantages,
                                            const Eigen::VectorXd& behavior_log_probs,
                                            const PpoConfig& config) {
  const Eigen::Index m = features.rows();
  if (m == 0) throw std::invalid_argument("ppo surrogate: empty minibatch");

  BatchCache cache;
  const Eigen::MatrixXd means = policy_mean_batch(policy, features, &cache);
  const Eigen::VectorXd log_probs = log_probs_from_means(policy, means, actions);
  const Eigen::ArrayXd var = policy.variances().array();

  SurrogateResult res;
  Eigen::MatrixXd mean_grads = Eigen::MatrixXd::Zero(m, means.cols());
  Eigen::ArrayXd log_std_grad = Eigen::ArrayXd::Zero(policy.learnable_std ? means.cols() : 0);
  long clipped = 0;
  const double lo = 1.0 - config.clip_ratio;
  const double hi = 1.0 + config.clip_ratio;
  for (Eigen::Index s = 0; s < m; ++s) {
    const double ratio = std::exp(log_probs(s) - behavior_log_probs(s));
    const double adv = advantages(s);
    const double unclipped = ratio * adv;
    const double clipped_term = std::clamp(ratio, lo, hi) * adv;
    res.loss += -std::min(unclipped, clipped_term) / static_cast<double>(m);
    if (ratio < lo || ratio > hi) ++clipped;
    // the clipped branch is constant in theta, so only samples where the
    // unclipped branch attains the min contribute gradient
    if (unclipped <= clipped_term) {
      const double w = -adv * ratio / static_cast<double>(m);
      const Eigen::ArrayXd dlogp_dmean =
          (actions.row(s) - means.row(s)).transpose().array() / var;
      mean_grads.row(s) = (w * dlogp_dmean).matrix().transpose();
      if (policy.learnable_std) {
        const Eigen::ArrayXd diff2 =
            (actions.row(s) - means.row(s)).transpose().array().square();
        log_std_grad += w * (diff2 / var - 1.0);
      }
    }
  }
  res.grad = backward_batch(policy.mean_net, cache, mean_grads);
  res.clip_fraction = static_cast<double>(clipped) / static_cast<double>(m);
  if (policy.learnable_std) {
    // entropy bonus: H = sum(log_std) + const, maximized with weight lambda1
    res.log_std_grad = (log_std_grad - config.entropy_weight).matrix();
  }
  res.loss -= config.entropy_weight * policy_entropy(policy);
  return res;
}

PpoDiagnostics ppo_update(GaussianPolicy& policy, ValueNet& value, const AdvantageBatch& batch,
                          const PpoConfig& config, AdamState& policy_adam, AdamState& value_adam,
                          Rng& rng) {
  validate(config);
  const Eigen::Index n = batch.features.rows();
  if (n == 0) throw std::invalid_argument("ppo_update: empty batch");
  if (!batch.advantages.allFinite()) throw std::invalid_argument("ppo_update: non-finite advantages");

  PpoDiagnostics diag;
  diag.entropy = policy_entropy(policy);

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  long steps = 0;
  for (int epoch = 0; epoch < config.epochs_per_batch; ++epoch) {
    // Fisher-Yates with our own stream; std::shuffle is implementation-defined
    for (Eigen::Index i = n - 1; i > 0; --i)
      std::swap(order[i], order[rng.uniform_int(0, static_cast<int>(i))]);
    for (Eigen::Index start = 0; start < n; start += config.minibatch_size) {
      const Eigen::Index count = std::min<Eigen::Index>(config.minibatch_size, n - start);
      Eigen::MatrixXd feats(count, batch.features.cols());
      Eigen::MatrixXd acts(count, batch.actions.cols());
      Eigen::VectorXd advs(count), blogp(count), vtarg(count);
      for (Eigen::Index k = 0; k < count; ++k) {
        const Eigen::Index idx = order[start + k];
        feats.row(k) = batch.features.row(idx);
        acts.row(k) = batch.actions.row(idx);
        advs(k) = batch.advantages(idx);
        blogp(k) = batch.behavior_log_probs(idx);
        vtarg(k) = batch.value_targets(idx);
      }

      SurrogateResult sur = ppo_surrogate_loss_and_grad(policy, feats, acts, advs, blogp, config);
      auto [vloss, vgrad] = value_loss_and_grad(value, feats, vtarg);
      if (!all_finite(sur.grad) || !all_finite(vgrad)) {
        diag.ok = false;
        return diag;
      }
      adam_step(policy.mean_net, sur.grad, policy_adam, config.learning_rate);
      if (policy.learnable_std && sur.log_std_grad.size() > 0) {
        // plain gradient step on the log-stddevs
        policy.log_std -= config.learning_rate * sur.log_std_grad;
      }
      adam_step(value.net, vgrad, value_adam, config.learning_rate);

      diag.surrogate_loss += sur.loss;
      diag.value_loss += vloss;
      diag.clip_fraction += sur.clip_fraction;
      ++steps;
    }
  }
  if (steps > 0) {
    diag.surrogate_loss /= static_cast<double>(steps);
    diag.value_loss /= static_cast<double>(steps);
    diag.clip_fraction /= static_cast<double>(steps);
  }
  return diag;
}

std::pair<double, Gradient> mle_loss_and_grad(const GaussianPolicy& policy,
                                              const FeaturePairs& data) {
  const Eigen::Index m = data.size();
  if (m == 0) throw std::invalid_argument("mle: empty data");
  BatchCache cache;
  const Eigen::MatrixXd means = policy_mean_batch(policy, data.state_goals, &cache);
  const Eigen::VectorXd log_probs = log_probs_from_means(policy, means, data.actions);
  const double loss = -log_probs.mean();
  const Eigen::ArrayXd var = policy.variances().array();
  // d(-mean log p)/d mean = (mean - action) / var / m
  Eigen::MatrixXd mean_grads(m, means.cols());
  for (Eigen::Index s = 0; s < m; ++s)
    mean_grads.row(s) =
        ((means.row(s) - data.actions.row(s)).transpose().array() / var).matrix().transpose() /
        static_cast<double>(m);
  Gradient grad = backward_batch(policy.mean_net, cache, mean_grads);
  return {loss, std::move(grad)};
}

void mle_pretrain(GaussianPolicy& policy, const FeaturePairs& data, int steps, double lr,
                  int minibatch_size, Rng& rng) {
  if (steps < 0) throw std::invalid_argument("mle_pretrain: steps must be >= 0");
  if (data.size() == 0) throw std::invalid_argument("mle_pretrain: empty data");
  const int pool = static_cast<int>(data.size());
  for (int s = 0; s < steps; ++s) {
    FeaturePairs mb;
    if (minibatch_size >= pool) {
      mb = data;
    } else {
      mb.state_goals.resize(minibatch_size, data.state_goals.cols());
      mb.actions.resize(minibatch_size, data.actions.cols());
      for (int i = 0; i < minibatch_size; ++i) {
        const int k = rng.uniform_int(0, pool - 1);
        mb.state_goals.row(i) = data.state_goals.row(k);
        mb.actions.row(i) = data.actions.row(k);
      }
    }
    auto [loss, grad] = mle_loss_and_grad(policy, mb);
    (void)loss;
    sgd_step(policy.mean_net, grad, lr);
  }
}

void mle_pretrain(GaussianPolicy& policy, std::span<const RelabeledTrajectory> expert_like,
                  int steps, double lr, int minibatch_size, Rng& rng) {
  mle_pretrain(policy, to_feature_pairs(expert_like), steps, lr, minibatch_size, rng);
}

std::pair<double, Gradient> value_loss_and_grad(const ValueNet& value,
                                                const Eigen::MatrixXd& features,
                                                const Eigen::VectorXd& targets) {
  const Eigen::Index m = features.rows();
  if (m == 0) throw std::invalid_argument("value loss: empty batch");
  BatchCache cache;
  const Eigen::VectorXd preds = forward_batch(value.net, features, &cache).col(0);
  const Eigen::VectorXd err = preds - targets;
  const double loss = err.squaredNorm() / static_cast<double>(m);
  const Eigen::MatrixXd output_grads = (2.0 / static_cast<double>(m)) * err;
  Gradient grad = backward_batch(value.net, cache, output_grads);
  return {loss, std::move(grad)};
}

}  // namespace hgail
