#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hgail/env.hpp"
#include "hgail/gaussian_policy.hpp"

namespace hgail {

struct Transition {
  GoalObservation state;
  Goal goal;
  Action action;                   // as sampled from the policy, unbounded
  Eigen::Vector4d applied_command; // as executed: clamped, displacement in units of max_step
  GoalObservation next_state;
  Eigen::Vector3d achieved_next;   // achieved_goal(next_state)
  double log_prob_behavior = 0.0;  // log-density of the sampled action under the collecting policy
};

struct Trajectory {
  Task task = Task::kReach;
  std::vector<Transition> transitions;
  double episode_return = 0.0;  // sum of environment sparse rewards, in [-T, 0]

  int horizon() const { return static_cast<int>(transitions.size()); }
};

struct TrajectoryBatch {
  std::vector<Trajectory> trajectories;
  int policy_version = 0;

  int total_steps() const;
};

// Runs `n_episodes` episodes of the stochastic policy. Each episode draws its
// randomness from its own child stream, split off in episode order, so the
// result is independent of any execution interleaving. Actions are recorded
// as sampled (pre-clamp); the environment clamps when stepping.
TrajectoryBatch collect(const GaussianPolicy& policy, const EnvConfig& env_config, int n_episodes,
                        Rng& rng, int policy_version = 0);

// Flattened (state||goal, action) rows in trajectory order; row i*T + t is
// step t of trajectory i. The action columns carry the executed command in
// [-1,1] units so downstream consumers see the bounded action space.
struct FeaturePairs {
  Eigen::MatrixXd state_goals;  // n x (observation dim + 3)
  Eigen::MatrixXd actions;      // n x 4

  Eigen::Index size() const { return state_goals.rows(); }
};

FeaturePairs to_feature_pairs(const TrajectoryBatch& batch);

Eigen::VectorXd state_goal_vector(const Transition& t, Task task);

}  // namespace hgail
