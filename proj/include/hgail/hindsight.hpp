#pragma once

#include <span>
#include <vector>

#include "hgail/rollout.hpp"

namespace hgail {

enum class HindsightStrategy { kFuture, kFinal };

struct HindsightConfig {
  HindsightStrategy strategy = HindsightStrategy::kFuture;
  double p_ht = 1.0;        // per-step relabel probability
  bool curriculum = true;   // false: reuse the relabeled iteration-zero set forever
};

void validate(const HindsightConfig& config);

// Output of one relabel pass. States, actions, and length are identical to
// the source; only per-step goal fields may change. relabeled_steps is the
// set H_I of selected time indices over states 0..T; index T has no outgoing
// transition, so its selection is recorded but changes nothing.
struct RelabeledTrajectory {
  Trajectory trajectory;
  int source_index = 0;
  std::vector<int> relabeled_steps;
};

// Per selected step j < T the new goal is the achieved position of state l,
// drawn uniformly from {j, ..., T} for the future strategy and fixed to T for
// the final strategy. Steps outside H_I keep their original goal.
RelabeledTrajectory relabel_trajectory(const Trajectory& traj, const HindsightConfig& config,
                                       Rng& rng);

// independent relabel per trajectory, each on its own split stream, output in
// input order
std::vector<RelabeledTrajectory> relabel_batch(const TrajectoryBatch& batch,
                                               const HindsightConfig& config, Rng& rng);

// achieved position of state index l (0..T) of a trajectory
Eigen::Vector3d achieved_at_state(const Trajectory& traj, int l);

FeaturePairs to_feature_pairs(std::span<const RelabeledTrajectory> relabeled);

// Provider backing the no-curriculum ablation: discriminator positives come
// from the frozen iteration-zero relabeled set on every call.
class FrozenHindsightSource {
 public:
  explicit FrozenHindsightSource(std::vector<RelabeledTrajectory> initial_relabeled);

  const std::vector<RelabeledTrajectory>& set() const { return set_; }
  const FeaturePairs& pairs() const { return pairs_; }

  // n rows sampled uniformly with replacement
  FeaturePairs sample_pairs(int n, Rng& rng) const;

 private:
  std::vector<RelabeledTrajectory> set_;
  FeaturePairs pairs_;
};

}  // namespace hgail
