#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hgail/rollout.hpp"

using namespace hgail;

namespace {

GaussianPolicy test_policy(std::uint64_t seed = 1, Task task = Task::kReach) {
  Rng rng(seed);
  return make_policy({observation_dim(task) + 3, 64, 64, 4}, 1.0, rng);
}

}  // namespace

TEST_CASE("one episode yields exactly horizon transitions") {
  const GaussianPolicy policy = test_policy();
  EnvConfig env;
  Rng rng(2);
  const TrajectoryBatch batch = collect(policy, env, 1, rng);
  REQUIRE(batch.trajectories.size() == 1);
  CHECK(batch.trajectories[0].horizon() == env.horizon);
  CHECK(batch.total_steps() == env.horizon);
}

TEST_CASE("same seed and policy give bit-identical batches") {
  const GaussianPolicy policy = test_policy();
  EnvConfig env;
  Rng a(5), b(5);
  const TrajectoryBatch x = collect(policy, env, 4, a);
  const TrajectoryBatch y = collect(policy, env, 4, b);
  REQUIRE(x.trajectories.size() == y.trajectories.size());
  for (std::size_t i = 0; i < x.trajectories.size(); ++i) {
    CHECK(x.trajectories[i].episode_return == y.trajectories[i].episode_return);
    for (int t = 0; t < x.trajectories[i].horizon(); ++t) {
      const auto& tx = x.trajectories[i].transitions[t];
      const auto& ty = y.trajectories[i].transitions[t];
      CHECK((tx.action.delta - ty.action.delta).cwiseAbs().maxCoeff() == 0.0);
      CHECK((tx.state.gripper_position - ty.state.gripper_position).cwiseAbs().maxCoeff() == 0.0);
      CHECK(tx.log_prob_behavior == ty.log_prob_behavior);
    }
  }
}

TEST_CASE("transitions chain bit-exactly") {
  const GaussianPolicy policy = test_policy();
  EnvConfig env;
  Rng rng(7);
  const TrajectoryBatch batch = collect(policy, env, 3, rng);
  for (const auto& traj : batch.trajectories) {
    for (int t = 0; t + 1 < traj.horizon(); ++t) {
      const auto& cur = traj.transitions[t];
      const auto& nxt = traj.transitions[t + 1];
      CHECK((cur.next_state.gripper_position - nxt.state.gripper_position).cwiseAbs().maxCoeff() ==
            0.0);
      CHECK((cur.next_state.gripper_velocity - nxt.state.gripper_velocity).cwiseAbs().maxCoeff() ==
            0.0);
      // one goal per episode before relabeling
      CHECK((cur.goal.target - nxt.goal.target).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("achieved_next matches achieved_goal of the next state") {
  const EnvConfig env{Task::kGrasp};
  const GaussianPolicy policy = test_policy(3, Task::kGrasp);
  Rng rng(11);
  const TrajectoryBatch batch = collect(policy, env, 2, rng);
  for (const auto& traj : batch.trajectories)
    for (const auto& tr : traj.transitions)
      CHECK((tr.achieved_next - achieved_goal(tr.next_state, env.task)).cwiseAbs().maxCoeff() ==
            0.0);
}

TEST_CASE("stored behavior log-probs equal recomputed policy log-probs") {
  const GaussianPolicy policy = test_policy();
  EnvConfig env;
  Rng rng(13);
  const TrajectoryBatch batch = collect(policy, env, 2, rng);
  for (const auto& traj : batch.trajectories) {
    for (const auto& tr : traj.transitions) {
      const double recomputed =
          policy_log_prob(policy, state_goal_vector(tr, env.task), tr.action.delta);
      CHECK(std::abs(recomputed - tr.log_prob_behavior) < 1e-12);
    }
  }
}

TEST_CASE("episode return counts non-success steps") {
  const GaussianPolicy policy = test_policy();
  EnvConfig env;
  Rng rng(17);
  const TrajectoryBatch batch = collect(policy, env, 4, rng);
  for (const auto& traj : batch.trajectories) {
    int successes = 0;
    for (const auto& tr : traj.transitions)
      if (sparse_reward(tr.next_state, tr.goal, env) == 0) ++successes;
    CHECK(traj.episode_return == doctest::Approx(-(traj.horizon() - successes)));
    CHECK(traj.episode_return >= -traj.horizon());
    CHECK(traj.episode_return <= 0.0);
  }
}

TEST_CASE("a random policy rarely succeeds on reach") {
  const GaussianPolicy policy = test_policy(99);
  EnvConfig env;
  Rng rng(19);
  const TrajectoryBatch batch = collect(policy, env, 100, rng);
  int successes = 0;
  for (const auto& traj : batch.trajectories) {
    const auto& last = traj.transitions.back();
    if (sparse_reward(last.next_state, last.goal, env) == 0) ++successes;
  }
  CHECK(static_cast<double>(successes) / 100.0 < 0.05);
}

TEST_CASE("feature pairs flatten in trajectory-major order") {
  const GaussianPolicy policy = test_policy();
  EnvConfig env;
  Rng rng(23);
  const TrajectoryBatch batch = collect(policy, env, 2, rng);
  const FeaturePairs pairs = to_feature_pairs(batch);
  CHECK(pairs.size() == 2 * env.horizon);
  CHECK(pairs.state_goals.cols() == observation_dim(env.task) + 3);
  CHECK(pairs.actions.cols() == 4);

  // row i*T + t round-trips to trajectory i, step t
  for (int i = 0; i < 2; ++i) {
    for (int t = 0; t < env.horizon; ++t) {
      const auto& tr = batch.trajectories[i].transitions[t];
      const Eigen::VectorXd expected = state_goal_vector(tr, env.task);
      const Eigen::Index row = i * env.horizon + t;
      CHECK((pairs.state_goals.row(row).transpose() - expected).cwiseAbs().maxCoeff() == 0.0);
      CHECK((pairs.actions.row(row).transpose() - tr.applied_command).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("applied commands are the clamped actions in max_step units") {
  const GaussianPolicy policy = test_policy();
  EnvConfig env;
  Rng rng(31);
  const TrajectoryBatch batch = collect(policy, env, 2, rng);
  for (const auto& traj : batch.trajectories) {
    for (const auto& tr : traj.transitions) {
      CHECK((tr.applied_command - executed_command(tr.action, env)).cwiseAbs().maxCoeff() == 0.0);
      CHECK(tr.applied_command.cwiseAbs().maxCoeff() <= 1.0);
      // executed displacement reproduces the position change away from walls
      const Eigen::Vector3d disp = tr.applied_command.head<3>() * env.max_step;
      const Eigen::Vector3d moved = tr.next_state.gripper_position - tr.state.gripper_position;
      for (int k = 0; k < 3; ++k) {
        const bool at_wall = tr.next_state.gripper_position(k) == env.workspace_lo(k) ||
                             tr.next_state.gripper_position(k) == env.workspace_hi(k);
        if (!at_wall) CHECK(moved(k) == doctest::Approx(disp(k)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("collect rejects a non-positive episode count") {
  const GaussianPolicy policy = test_policy();
  EnvConfig env;
  Rng rng(29);
  CHECK_THROWS_AS(collect(policy, env, 0, rng), std::invalid_argument);
}
