#include "hgail/rollout.hpp"

#include <stdexcept>

namespace hgail {

int TrajectoryBatch::total_steps() const {
  int n = 0;
  for (const auto& t : trajectories) n += t.horizon();
  return n;
}

TrajectoryBatch collect(const GaussianPolicy& policy, const EnvConfig& env_config, int n_episodes,
                        Rng& rng, int policy_version) {
  if (n_episodes < 1) throw std::invalid_argument("collect: n_episodes must be >= 1");
  validate(env_config);
  const int T = env_config.horizon;
  const int obs_dim = observation_dim(env_config.task);

  std::vector<Rng> streams;
  streams.reserve(n_episodes);
  for (int e = 0; e < n_episodes; ++e) streams.push_back(rng.split());

  TrajectoryBatch batch;
  batch.policy_version = policy_version;
  batch.trajectories.resize(n_episodes);

  std::vector<GoalObservation> states(n_episodes);
  std::vector<Goal> goals(n_episodes);
  for (int e = 0; e < n_episodes; ++e) {
    std::tie(states[e], goals[e]) = reset(env_config, streams[e]);
    batch.trajectories[e].task = env_config.task;
    batch.trajectories[e].transitions.reserve(T);
  }

  // all episodes advance in lockstep so the policy forward pass is batched
  Eigen::MatrixXd inputs(n_episodes, obs_dim + 3);
  for (int t = 0; t < T; ++t) {
    for (int e = 0; e < n_episodes; ++e) {
      inputs.row(e).head(obs_dim) = observation_vector(states[e], env_config.task).transpose();
      inputs.row(e).tail(3) = goals[e].target.transpose();
    }
    const Eigen::MatrixXd means = policy_mean_batch(policy, inputs);
    for (int e = 0; e < n_episodes; ++e) {
      const Eigen::VectorXd mean = means.row(e).transpose();
      Transition tr;
      tr.state = states[e];
      tr.goal = goals[e];
      tr.action.delta = sample_action(policy, mean, streams[e]);
      tr.applied_command = executed_command(tr.action, env_config);
      tr.log_prob_behavior = log_prob_from_mean(policy, mean, tr.action.delta);
      const StepResult sr = step(states[e], tr.action, goals[e], env_config);
      tr.next_state = sr.next;
      tr.achieved_next = achieved_goal(sr.next, env_config.task);
      batch.trajectories[e].episode_return += sr.reward;
      states[e] = sr.next;
      batch.trajectories[e].transitions.push_back(std::move(tr));
    }
  }
  return batch;
}

Eigen::VectorXd state_goal_vector(const Transition& t, Task task) {
  const Eigen::VectorXd obs = observation_vector(t.state, task);
  Eigen::VectorXd v(obs.size() + 3);
  v.head(obs.size()) = obs;
  v.tail(3) = t.goal.target;
  return v;
}

FeaturePairs to_feature_pairs(const TrajectoryBatch& batch) {
  if (batch.trajectories.empty()) throw std::invalid_argument("to_feature_pairs: empty batch");
  const Task task = batch.trajectories.front().task;
  const int dim = observation_dim(task) + 3;
  FeaturePairs pairs;
  pairs.state_goals.resize(batch.total_steps(), dim);
  pairs.actions.resize(batch.total_steps(), 4);
  Eigen::Index row = 0;
  for (const auto& traj : batch.trajectories) {
    for (const auto& tr : traj.transitions) {
      pairs.state_goals.row(row) = state_goal_vector(tr, task).transpose();
      pairs.actions.row(row) = tr.applied_command.transpose();
      ++row;
    }
  }
  return pairs;
}

}  // namespace hgail
