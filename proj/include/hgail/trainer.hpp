#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "hgail/adversary.hpp"
#include "hgail/config.hpp"
#include "hgail/hindsight.hpp"
#include "hgail/metrics.hpp"
#include "hgail/optim.hpp"
#include "hgail/rollout.hpp"

namespace hgail {

// Top-K trajectory store ranked by episode return, ties broken by recency;
// the minimum-return trajectory is evicted first.
class GasilBuffer {
 public:
  GasilBuffer() = default;
  explicit GasilBuffer(int capacity);

  void offer(const Trajectory& traj);
  int size() const { return static_cast<int>(items_.size()); }
  int capacity() const { return capacity_; }
  double min_return() const;
  std::vector<const Trajectory*> trajectories() const;
  FeaturePairs pairs() const;

 private:
  struct Item {
    Trajectory traj;
    long order = 0;
  };
  int capacity_ = 1;
  long counter_ = 0;
  std::vector<Item> items_;
};

struct TrainerState {
  TrainConfig config;
  GaussianPolicy policy;
  ValueNet value;
  DiscriminatorState disc;
  AdamState policy_adam;
  AdamState value_adam;
  AdamState disc_adam;
  std::optional<FrozenHindsightSource> frozen_hindsight;  // relabeled iteration-zero set
  std::vector<RelabeledTrajectory> initial_relabeled;
  TrajectoryBatch initial_rollouts;  // tau_0, kept for inspection
  TrajectoryBatch demos;     // gail_demo positives
  GasilBuffer gasil;
  int policy_version = 0;
  double last_disc_loss = 0.0;
  double last_surrogate = 0.0;
  double last_clip_fraction = 0.0;
  Rng rng{0};
  Rng eval_rng{0};
};

// Algorithm setup: network init, iteration-zero rollouts, hindsight (or
// demo/buffer) positives, MLE pretraining of the generator and cross-entropy
// pretraining of the discriminator. The plain-PPO baseline skips the
// adversarial pretraining entirely.
TrainerState pretrain(const TrainConfig& config);

// One alternation: g_steps of {collect, discriminator reward, PPO update}
// followed by d_steps of {collect fresh, expert-like positives, one
// discriminator gradient step}. Throws if parameters go non-finite.
MetricsRecord train_iteration(TrainerState& state, int iteration);

struct RunResult {
  std::vector<MetricsRecord> curve;
  TrainerState state;
};

// Full run: pretrain, an iteration-zero evaluation record, then the
// configured number of iterations. When out_dir is given the curve and
// checkpoints are persisted there after every iteration.
RunResult run(const TrainConfig& config, const std::filesystem::path* out_dir = nullptr,
              bool verbose = false);

RunResult run_baseline_gail_demo(TrainConfig config, const std::filesystem::path* out_dir = nullptr);
RunResult run_baseline_gasil(TrainConfig config, const std::filesystem::path* out_dir = nullptr);
RunResult run_baseline_hgail_no(TrainConfig config, const std::filesystem::path* out_dir = nullptr);

struct EvalStats {
  double success_rate = 0.0;
  double distance_mean = 0.0;  // L1
  double distance_std = 0.0;
  std::vector<double> l1_distances;
  std::vector<double> l2_distances;
  int episodes = 0;
};

// deterministic evaluation: episodes driven by the policy mean action
EvalStats evaluate_policy(const GaussianPolicy& policy, const EnvConfig& env_config, int episodes,
                          Rng& rng);
EvalStats evaluate_scripted_expert(const EnvConfig& env_config, int episodes, Rng& rng);

// demonstration episodes from the scripted controller
TrajectoryBatch collect_expert(const EnvConfig& env_config, int n_episodes, Rng& rng);

// uniform-with-replacement row sample
FeaturePairs sample_rows(const FeaturePairs& pool, int n, Rng& rng);

// positives for one discriminator step, according to the configured
// algorithm; `fresh` is the batch just collected in this d-step
FeaturePairs expert_pair_pool(TrainerState& state, const TrajectoryBatch& fresh);

}  // namespace hgail
