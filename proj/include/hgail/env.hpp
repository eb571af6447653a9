#pragma once

#include <Eigen/Dense>
#include <optional>
#include <utility>

#include "hgail/rng.hpp"

namespace hgail {

enum class Task { kReach, kGrasp };

struct EnvConfig {
  Task task = Task::kReach;
  Eigen::Vector3d workspace_lo{0.0, 0.0, 0.0};
  Eigen::Vector3d workspace_hi{1.0, 1.0, 1.0};
  double max_step = 0.025;     // per-component displacement bound, meters
  int horizon = 50;            // steps per episode
  double success_radius = 0.05;
  double damping = 0.1;        // in [0,1); velocity = (1 - damping) * displacement
};

// throws std::invalid_argument on degenerate workspace or bad scalars
void validate(const EnvConfig& config);

struct Goal {
  Eigen::Vector3d target{0.0, 0.0, 0.0};
};

struct GoalObservation {
  Eigen::Vector3d gripper_position{0.0, 0.0, 0.0};
  Eigen::Vector3d gripper_velocity{0.0, 0.0, 0.0};
  std::optional<Eigen::Vector3d> object_position;  // grasp task only
  std::optional<double> gripper_aperture;          // grasp task only, 1 open .. 0 closed
};

// First three components: displacement command, clamped to [-1,1] per axis
// and scaled by max_step meters when executed. Fourth: gripper command in
// [-1,1], positive closes.
struct Action {
  Eigen::Vector4d delta{0.0, 0.0, 0.0, 0.0};
};

// task-geometry constants; spawn offsets and the lift height scale with the
// workspace so the reachability structure is preserved across box sizes
inline constexpr double kReachSpawnFraction = 0.3;  // gripper-goal offset, fraction of each axis
inline constexpr double kGraspSpawnFraction = 0.3;  // gripper-object offset, fraction of each axis
inline constexpr double kLiftFraction = 0.25;       // goal height above the object, z-range fraction
inline constexpr double kGraspRadius = 0.03;        // gripper-object distance that allows a grasp
inline constexpr double kApertureClosed = 0.5;      // aperture below this counts as closed

std::pair<GoalObservation, Goal> reset(const EnvConfig& config, Rng& rng);

struct StepResult {
  GoalObservation next;
  int reward = -1;  // in {-1, 0}
};

StepResult step(const GoalObservation& state, const Action& action, const Goal& goal,
                const EnvConfig& config);

// position the success predicate compares against the goal: the gripper for
// reach, the object for grasp
Eigen::Vector3d achieved_goal(const GoalObservation& state, Task task);

// sparse reward of a state already produced by step: 0 on success, else -1
int sparse_reward(const GoalObservation& state, const Goal& goal, const EnvConfig& config);

bool is_grasped(const GoalObservation& state);

// proportional controller used to produce demonstrations for the
// demonstration-fed baseline; saturates at max_step along the error direction
Action scripted_expert(const GoalObservation& state, const Goal& goal, const EnvConfig& config);

// the command step() actually executes: every component clamped to [-1,1]
Eigen::Vector4d executed_command(const Action& action, const EnvConfig& config);

int observation_dim(Task task);
Eigen::VectorXd observation_vector(const GoalObservation& state, Task task);

}  // namespace hgail
