#pragma once

#include <filesystem>

#include "hgail/gaussian_policy.hpp"
#include "hgail/mlp.hpp"
#include "hgail/rollout.hpp"

namespace hgail {

// Flat binary checkpoint layout, shared by every artifact this project
// writes. All integers are little-endian uint32, all floats little-endian
// IEEE-754 doubles, matrices row-major.
//
//   mlp block:     u32 layer_count, then per layer u32 rows, u32 cols,
//                  rows*cols weight doubles, rows bias doubles
//   "HGMLP001":    one mlp block
//   "HGPOL001":    u32 learnable flag, f64 covariance, u32 action_dim,
//                  action_dim log-std doubles, mlp block (mean net)
//   "HGEXPERT1":   scripted-expert pseudo-checkpoint, no payload
//   "HGTB0001":    u32 task, u32 n_trajectories, u32 horizon,
//                  u32 policy_version, then per trajectory f64 return and
//                  per transition: state, goal, action, applied command,
//                  next_state, achieved_next, log_prob_behavior

void save_mlp(const MlpParams& params, const std::filesystem::path& path);
MlpParams load_mlp(const std::filesystem::path& path);

void save_policy(const GaussianPolicy& policy, const std::filesystem::path& path);
GaussianPolicy load_policy(const std::filesystem::path& path);

void save_expert_checkpoint(const std::filesystem::path& path);
// true if the file carries the scripted-expert magic
bool is_expert_checkpoint(const std::filesystem::path& path);

void save_trajectory_batch(const TrajectoryBatch& batch, const std::filesystem::path& path);
TrajectoryBatch load_trajectory_batch(const std::filesystem::path& path);

}  // namespace hgail
