#include "hgail/env.hpp"

#include <algorithm>
#include <stdexcept>

namespace hgail {

namespace {

Eigen::Vector3d clip_to_box(Eigen::Vector3d p, const EnvConfig& c) {
  for (int i = 0; i < 3; ++i) p(i) = std::clamp(p(i), c.workspace_lo(i), c.workspace_hi(i));
  return p;
}

Eigen::Vector3d uniform_in_box(const EnvConfig& c, Rng& rng) {
  Eigen::Vector3d p;
  for (int i = 0; i < 3; ++i) p(i) = rng.uniform(c.workspace_lo(i), c.workspace_hi(i));
  return p;
}

}  // namespace

void validate(const EnvConfig& config) {
  for (int i = 0; i < 3; ++i) {
    if (!(config.workspace_lo(i) < config.workspace_hi(i)))
      throw std::invalid_argument("env: degenerate workspace box (lo must be < hi per axis)");
  }
  if (!(config.max_step > 0.0)) throw std::invalid_argument("env: max_step must be positive");
  if (config.horizon < 2) throw std::invalid_argument("env: horizon must be at least 2");
  if (!(config.success_radius > 0.0))
    throw std::invalid_argument("env: success_radius must be positive");
  if (config.damping < 0.0 || config.damping >= 1.0)
    throw std::invalid_argument("env: damping must lie in [0,1)");
}

std::pair<GoalObservation, Goal> reset(const EnvConfig& config, Rng& rng) {
  validate(config);
  GoalObservation obs;
  Goal goal;
  obs.gripper_velocity.setZero();
  const Eigen::Vector3d extent = config.workspace_hi - config.workspace_lo;
  if (config.task == Task::kReach) {
    // goal uniform over the workspace; the gripper starts within reach of it,
    // mirroring the arm-at-the-table geometry of the robot task
    goal.target = uniform_in_box(config, rng);
    Eigen::Vector3d gripper;
    for (int i = 0; i < 3; ++i) {
      const double r = kReachSpawnFraction * extent(i);
      gripper(i) = goal.target(i) + rng.uniform(-r, r);
    }
    obs.gripper_position = clip_to_box(gripper, config);
  } else {
    // object spawns on the workspace floor; the gripper starts nearby, which
    // mirrors the table-top arrangement of the corresponding robot task
    Eigen::Vector3d object;
    object(0) = rng.uniform(config.workspace_lo(0), config.workspace_hi(0));
    object(1) = rng.uniform(config.workspace_lo(1), config.workspace_hi(1));
    object(2) = config.workspace_lo(2);
    Eigen::Vector3d gripper;
    for (int i = 0; i < 3; ++i) {
      const double r = kGraspSpawnFraction * extent(i);
      gripper(i) = object(i) + rng.uniform(-r, r);
    }
    obs.gripper_position = clip_to_box(gripper, config);
    obs.object_position = object;
    obs.gripper_aperture = 1.0;  // open
    goal.target =
        clip_to_box(object + Eigen::Vector3d(0.0, 0.0, kLiftFraction * extent(2)), config);
  }
  return {obs, goal};
}

bool is_grasped(const GoalObservation& state) {
  if (!state.object_position || !state.gripper_aperture) return false;
  return *state.gripper_aperture <= kApertureClosed &&
         (*state.object_position - state.gripper_position).norm() <= kGraspRadius;
}

int sparse_reward(const GoalObservation& state, const Goal& goal, const EnvConfig& config) {
  const bool near = (achieved_goal(state, config.task) - goal.target).norm() <=
                    config.success_radius;
  if (config.task == Task::kReach) return near ? 0 : -1;
  return (near && is_grasped(state)) ? 0 : -1;
}

StepResult step(const GoalObservation& state, const Action& action, const Goal& goal,
                const EnvConfig& config) {
  Eigen::Vector3d disp;
  for (int i = 0; i < 3; ++i)
    disp(i) = config.max_step * std::clamp(action.delta(i), -1.0, 1.0);

  StepResult result;
  GoalObservation& next = result.next;
  next.gripper_position = clip_to_box(state.gripper_position + disp, config);
  next.gripper_velocity = (1.0 - config.damping) * disp;

  if (config.task == Task::kGrasp) {
    if (!state.object_position || !state.gripper_aperture)
      throw std::logic_error("env: grasp step requires object_position and gripper_aperture");
    const double cmd = std::clamp(action.delta(3), -1.0, 1.0);
    const double aperture = (1.0 - cmd) / 2.0;
    Eigen::Vector3d object = *state.object_position;
    // closing while the gripper is at the object takes (or keeps) hold; the
    // held object then moves with the gripper
    if (aperture <= kApertureClosed &&
        (object - state.gripper_position).norm() <= kGraspRadius) {
      object = next.gripper_position;
    }
    next.object_position = object;
    next.gripper_aperture = aperture;
  }
  // reward is judged on the state the step produced
  result.reward = sparse_reward(next, goal, config);
  return result;
}

Eigen::Vector3d achieved_goal(const GoalObservation& state, Task task) {
  if (task == Task::kReach) return state.gripper_position;
  if (!state.object_position)
    throw std::logic_error("achieved_goal: grasp state without object_position");
  return *state.object_position;
}

Action scripted_expert(const GoalObservation& state, const Goal& goal, const EnvConfig& config) {
  Action a;
  // command toward the target: the executed displacement is the position
  // error itself once within max_step, else a max_step move along it
  auto move_toward = [&](const Eigen::Vector3d& target) {
    Eigen::Vector3d err = target - state.gripper_position;
    const double norm = err.norm();
    if (norm > config.max_step) err *= config.max_step / norm;
    a.delta.head<3>() = err / config.max_step;
  };
  if (config.task == Task::kReach) {
    move_toward(goal.target);
    a.delta(3) = 0.0;  // fixed on the reach task
    return a;
  }
  if (!state.object_position)
    throw std::logic_error("scripted_expert: grasp state without object_position");
  if (is_grasped(state)) {
    move_toward(goal.target);
    a.delta(3) = 1.0;  // keep closed while carrying
  } else if ((*state.object_position - state.gripper_position).norm() <= 0.5 * kGraspRadius) {
    a.delta.head<3>().setZero();
    a.delta(3) = 1.0;  // close on the object
  } else {
    move_toward(*state.object_position);
    a.delta(3) = -1.0;  // approach with the gripper open
  }
  return a;
}

Eigen::Vector4d executed_command(const Action& action, const EnvConfig& config) {
  (void)config;
  Eigen::Vector4d cmd;
  for (int i = 0; i < 4; ++i) cmd(i) = std::clamp(action.delta(i), -1.0, 1.0);
  return cmd;
}

int observation_dim(Task task) { return task == Task::kReach ? 6 : 10; }

Eigen::VectorXd observation_vector(const GoalObservation& state, Task task) {
  Eigen::VectorXd v(observation_dim(task));
  v.head<3>() = state.gripper_position;
  v.segment<3>(3) = state.gripper_velocity;
  if (task == Task::kGrasp) {
    if (!state.object_position || !state.gripper_aperture)
      throw std::logic_error("observation_vector: grasp state missing object fields");
    v.segment<3>(6) = *state.object_position;
    v(9) = *state.gripper_aperture;
  }
  return v;
}

}  // namespace hgail
