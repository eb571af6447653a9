#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hgail/env.hpp"
#include "hgail/trainer.hpp"

using namespace hgail;

namespace {

EnvConfig reach_config() { return EnvConfig{}; }

EnvConfig grasp_config() {
  EnvConfig c;
  c.task = Task::kGrasp;
  return c;
}

bool inside_box(const Eigen::Vector3d& p, const EnvConfig& c) {
  for (int i = 0; i < 3; ++i)
    if (p(i) < c.workspace_lo(i) - 1e-12 || p(i) > c.workspace_hi(i) + 1e-12) return false;
  return true;
}

}  // namespace

TEST_CASE("reset gives zero velocity and is deterministic under the seed") {
  Rng a(17), b(17);
  auto [obs1, goal1] = reset(reach_config(), a);
  auto [obs2, goal2] = reset(reach_config(), b);
  CHECK(obs1.gripper_velocity.cwiseAbs().maxCoeff() == 0.0);
  CHECK((obs1.gripper_position - obs2.gripper_position).cwiseAbs().maxCoeff() == 0.0);
  CHECK((goal1.target - goal2.target).cwiseAbs().maxCoeff() == 0.0);
  CHECK(!obs1.object_position.has_value());
  CHECK(!obs1.gripper_aperture.has_value());
}

TEST_CASE("goals and positions from 1000 seeded resets stay inside the workspace") {
  const EnvConfig reach = reach_config();
  const EnvConfig grasp = grasp_config();
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    Rng rng(seed);
    auto [obs, goal] = reset(reach, rng);
    CHECK(inside_box(goal.target, reach));
    CHECK(inside_box(obs.gripper_position, reach));
    Rng rng2(seed + 5000);
    auto [gobs, ggoal] = reset(grasp, rng2);
    CHECK(inside_box(ggoal.target, grasp));
    CHECK(inside_box(obs.gripper_position, grasp));
    CHECK(inside_box(*gobs.object_position, grasp));
    CHECK((*gobs.object_position)(2) == grasp.workspace_lo(2));  // on the floor
    CHECK(*gobs.gripper_aperture == 1.0);
    // goal is the lifted object position
    CHECK(ggoal.target(0) == (*gobs.object_position)(0));
    CHECK(ggoal.target(1) == (*gobs.object_position)(1));
    CHECK(ggoal.target(2) > (*gobs.object_position)(2));
  }
}

TEST_CASE("degenerate workspace is rejected") {
  EnvConfig c = reach_config();
  c.workspace_hi(1) = c.workspace_lo(1);
  Rng rng(1);
  CHECK_THROWS_AS(reset(c, rng), std::invalid_argument);
  EnvConfig bad_radius = reach_config();
  bad_radius.success_radius = 0.0;
  CHECK_THROWS_AS(validate(bad_radius), std::invalid_argument);
  EnvConfig bad_horizon = reach_config();
  bad_horizon.horizon = 1;
  CHECK_THROWS_AS(validate(bad_horizon), std::invalid_argument);
}

TEST_CASE("reward is 0 at the target and -1 far away") {
  const EnvConfig c = reach_config();
  GoalObservation obs;
  obs.gripper_position = Eigen::Vector3d(0.5, 0.5, 0.5);
  Goal goal{Eigen::Vector3d(0.5, 0.5, 0.5)};
  Action zero;
  CHECK(step(obs, zero, goal, c).reward == 0);

  Goal far{Eigen::Vector3d(0.5, 0.5, 0.5 + 10.0 * c.success_radius)};
  CHECK(step(obs, zero, far, c).reward == -1);
}

TEST_CASE("rewards over a random rollout are all in {-1, 0}") {
  const EnvConfig c = reach_config();
  Rng rng(23);
  auto [obs, goal] = reset(c, rng);
  for (int t = 0; t < 50; ++t) {
    Action a;
    for (int i = 0; i < 4; ++i) a.delta(i) = rng.normal();
    const StepResult sr = step(obs, a, goal, c);
    CHECK((sr.reward == 0 || sr.reward == -1));
    CHECK(inside_box(sr.next.gripper_position, c));
    obs = sr.next;
  }
}

TEST_CASE("reward 0 exactly when achieved position is within delta of the goal") {
  const EnvConfig c = reach_config();
  Rng rng(29);
  for (int trial = 0; trial < 500; ++trial) {
    auto [obs, goal] = reset(c, rng);
    Action a;
    for (int i = 0; i < 4; ++i) a.delta(i) = rng.normal();
    const StepResult sr = step(obs, a, goal, c);
    const double d = (achieved_goal(sr.next, c.task) - goal.target).norm();
    CHECK(sr.reward == ((d <= c.success_radius) ? 0 : -1));
  }
}

TEST_CASE("commands are clamped and scaled by max_step; velocity is damped") {
  EnvConfig c = reach_config();
  c.damping = 0.25;
  GoalObservation obs;
  obs.gripper_position = Eigen::Vector3d(0.5, 0.5, 0.5);
  Action big;
  big.delta << 10.0, -10.0, 0.4, 0.0;
  const StepResult sr = step(obs, big, Goal{Eigen::Vector3d(0, 0, 0)}, c);
  CHECK(sr.next.gripper_position(0) == doctest::Approx(0.5 + c.max_step));
  CHECK(sr.next.gripper_position(1) == doctest::Approx(0.5 - c.max_step));
  CHECK(sr.next.gripper_position(2) == doctest::Approx(0.5 + 0.4 * c.max_step));
  CHECK(sr.next.gripper_velocity(0) == doctest::Approx(0.75 * c.max_step));
  CHECK(sr.next.gripper_velocity(2) == doctest::Approx(0.75 * 0.4 * c.max_step));
}

TEST_CASE("achieved_goal is the gripper for reach, the object for grasp") {
  GoalObservation obs;
  obs.gripper_position = Eigen::Vector3d(0.2, 0.3, 0.4);
  CHECK((achieved_goal(obs, Task::kReach) - Eigen::Vector3d(0.2, 0.3, 0.4)).norm() == 0.0);
  obs.object_position = Eigen::Vector3d(0.5, 0.5, 0.1);
  obs.gripper_aperture = 1.0;
  CHECK((achieved_goal(obs, Task::kGrasp) - Eigen::Vector3d(0.5, 0.5, 0.1)).norm() == 0.0);

  GoalObservation incomplete;
  CHECK_THROWS_AS(achieved_goal(incomplete, Task::kGrasp), std::logic_error);
}

TEST_CASE("grasped object follows the gripper and drops the follow on reopen") {
  EnvConfig c = grasp_config();
  c.max_step = 0.05;
  GoalObservation obs;
  obs.gripper_position = Eigen::Vector3d(0.5, 0.5, 0.02);
  obs.object_position = Eigen::Vector3d(0.5, 0.5, 0.0);
  obs.gripper_aperture = 1.0;
  Goal goal{Eigen::Vector3d(0.5, 0.5, 0.2)};

  Action close;
  close.delta << 0.0, 0.0, 0.0, 1.0;
  StepResult sr = step(obs, close, goal, c);
  CHECK(is_grasped(sr.next));
  CHECK((*sr.next.object_position - sr.next.gripper_position).norm() == 0.0);

  // carry upward while closed
  Action lift;
  lift.delta << 0.0, 0.0, 0.05, 1.0;
  sr = step(sr.next, lift, goal, c);
  CHECK(is_grasped(sr.next));
  CHECK((*sr.next.object_position)(2) == doctest::Approx(0.07));

  // open: the object stops following
  Action open;
  open.delta << 0.0, 0.0, 0.05, -1.0;
  const StepResult released = step(sr.next, open, goal, c);
  CHECK(!is_grasped(released.next));
  CHECK((*released.next.object_position)(2) == doctest::Approx(0.07));
}

TEST_CASE("grasp success needs both the grasp and the object at the target") {
  EnvConfig c = grasp_config();
  GoalObservation obs;
  obs.gripper_position = Eigen::Vector3d(0.5, 0.5, 0.19);
  obs.object_position = Eigen::Vector3d(0.5, 0.5, 0.19);
  obs.gripper_aperture = 0.0;
  Goal goal{Eigen::Vector3d(0.5, 0.5, 0.2)};
  CHECK(sparse_reward(obs, goal, c) == 0);

  obs.gripper_aperture = 1.0;  // same position, not grasped
  CHECK(sparse_reward(obs, goal, c) == -1);
}

TEST_CASE("scripted expert emits zero displacement at the goal") {
  const EnvConfig c = reach_config();
  GoalObservation obs;
  obs.gripper_position = Eigen::Vector3d(0.4, 0.4, 0.4);
  const Action a = scripted_expert(obs, Goal{obs.gripper_position}, c);
  CHECK(a.delta.head<3>().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("scripted expert saturates: executed displacement norm is max_step toward a far goal") {
  EnvConfig c = reach_config();
  c.max_step = 0.05;
  GoalObservation obs;
  obs.gripper_position = Eigen::Vector3d(0.0, 0.0, 0.0);
  const Goal goal{Eigen::Vector3d(1.0, 0.0, 0.0)};  // 1 m away
  const Action a = scripted_expert(obs, goal, c);
  // saturated unit command along the error; the executed move has norm max_step
  CHECK(a.delta.head<3>().norm() == doctest::Approx(1.0).epsilon(1e-12));
  const StepResult sr = step(obs, a, goal, c);
  CHECK((sr.next.gripper_position - obs.gripper_position).norm() ==
        doctest::Approx(c.max_step).epsilon(1e-12));
  CHECK(sr.next.gripper_position(0) == doctest::Approx(c.max_step));
}

TEST_CASE("scripted expert succeeds on at least 99 of 100 seeded reach episodes") {
  Rng rng(101);
  const EvalStats stats = evaluate_scripted_expert(reach_config(), 100, rng);
  CHECK(stats.success_rate >= 0.99);
}

TEST_CASE("scripted expert succeeds on at least 99 of 100 seeded grasp episodes") {
  Rng rng(103);
  const EvalStats stats = evaluate_scripted_expert(grasp_config(), 100, rng);
  CHECK(stats.success_rate >= 0.99);
}

TEST_CASE("observation vectors carry task-dependent fields") {
  CHECK(observation_dim(Task::kReach) == 6);
  CHECK(observation_dim(Task::kGrasp) == 10);
  Rng rng(7);
  auto [obs, goal] = reset(grasp_config(), rng);
  const Eigen::VectorXd v = observation_vector(obs, Task::kGrasp);
  CHECK(v.size() == 10);
  CHECK(v(9) == 1.0);  // open aperture
}
