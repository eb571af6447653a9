#include "hgail/hindsight.hpp"

#include <stdexcept>

namespace hgail {

void validate(const HindsightConfig& config) {
  if (config.p_ht < 0.0 || config.p_ht > 1.0)
    throw std::invalid_argument("hindsight: p_ht must lie in [0,1]");
}

Eigen::Vector3d achieved_at_state(const Trajectory& traj, int l) {
  const int T = traj.horizon();
  if (l < 0 || l > T) throw std::out_of_range("achieved_at_state: index outside [0,T]");
  if (l == 0) return achieved_goal(traj.transitions.front().state, traj.task);
  return traj.transitions[l - 1].achieved_next;
}

RelabeledTrajectory relabel_trajectory(const Trajectory& traj, const HindsightConfig& config,
                                       Rng& rng) {
  validate(config);
  if (traj.transitions.empty()) throw std::invalid_argument("relabel: empty trajectory");
  RelabeledTrajectory out;
  out.trajectory = traj;
  const int T = traj.horizon();
  // one Bernoulli per state index 0..T, drawn before any index sampling so the
  // stream layout is independent of which steps were selected
  for (int t = 0; t <= T; ++t) {
    if (rng.uniform() < config.p_ht) out.relabeled_steps.push_back(t);
  }
  for (int j : out.relabeled_steps) {
    const int l =
        config.strategy == HindsightStrategy::kFinal ? T : rng.uniform_int(j, T);
    if (j < T) out.trajectory.transitions[j].goal.target = achieved_at_state(traj, l);
  }
  return out;
}

std::vector<RelabeledTrajectory> relabel_batch(const TrajectoryBatch& batch,
                                               const HindsightConfig& config, Rng& rng) {
  std::vector<RelabeledTrajectory> out;
  out.reserve(batch.trajectories.size());
  for (std::size_t i = 0; i < batch.trajectories.size(); ++i) {
    Rng stream = rng.split();
    RelabeledTrajectory r = relabel_trajectory(batch.trajectories[i], config, stream);
    r.source_index = static_cast<int>(i);
    out.push_back(std::move(r));
  }
  return out;
}

FeaturePairs to_feature_pairs(std::span<const RelabeledTrajectory> relabeled) {
  if (relabeled.empty()) throw std::invalid_argument("to_feature_pairs: empty relabeled set");
  TrajectoryBatch view;
  view.trajectories.reserve(relabeled.size());
  for (const auto& r : relabeled) view.trajectories.push_back(r.trajectory);
  return to_feature_pairs(view);
}

FrozenHindsightSource::FrozenHindsightSource(std::vector<RelabeledTrajectory> initial_relabeled)
    : set_(std::move(initial_relabeled)) {
  if (set_.empty()) throw std::invalid_argument("frozen_source: empty relabeled set");
  pairs_ = to_feature_pairs(std::span<const RelabeledTrajectory>(set_));
}

FeaturePairs FrozenHindsightSource::sample_pairs(int n, Rng& rng) const {
  if (n < 1) throw std::invalid_argument("frozen_source: need at least one sample");
  FeaturePairs out;
  out.state_goals.resize(n, pairs_.state_goals.cols());
  out.actions.resize(n, pairs_.actions.cols());
  const int pool = static_cast<int>(pairs_.size());
  for (int i = 0; i < n; ++i) {
    const int k = rng.uniform_int(0, pool - 1);
    out.state_goals.row(i) = pairs_.state_goals.row(k);
    out.actions.row(i) = pairs_.actions.row(k);
  }
  return out;
}

}  // namespace hgail
