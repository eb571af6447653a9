#pragma once

#include <Eigen/Dense>

#include "hgail/mlp.hpp"
#include "hgail/rollout.hpp"

namespace hgail {

// Raw-score discriminator over concatenated (observation, goal, action).
// Training pushes the score up on generator pairs and down on expert-like
// pairs, i.e. D = sigmoid(score) is the probability a pair came from the
// generator.
struct DiscriminatorState {
  MlpParams net;  // 2x100 tanh, scalar output
  int input_dim() const { return net.input_dim(); }
};

DiscriminatorState make_discriminator(int input_dim, Rng& rng);

enum class RewardKind { kR1, kR2, kR3, kR4 };
enum class ScoreSemantics { kRawLogit, kProbability };

struct RewardFormation {
  RewardKind kind = RewardKind::kR1;
  ScoreSemantics semantics = ScoreSemantics::kRawLogit;
};

double disc_score(const DiscriminatorState& disc, const Eigen::VectorXd& state_goal,
                  const Eigen::VectorXd& action);
Eigen::VectorXd disc_score_batch(const DiscriminatorState& disc, const FeaturePairs& pairs);

// Cross-entropy that drives D toward 1 on generator pairs and 0 on
// expert-like pairs:
//   loss = -mean_gen log D - mean_expert log(1 - D)
// computed through log-sigmoid so it stays finite for any finite score; the
// gradient is exact.
std::pair<double, Gradient> disc_loss_and_grad(const DiscriminatorState& disc,
                                               const FeaturePairs& generator_pairs,
                                               const FeaturePairs& expert_like_pairs);

// The four reward formations as functions of an expert-likeness score d
// (larger = more expert-like):
//   r1 = -log(1 - sig(d))   r2 = log(clip(d, 0, 1)), floored at 1e-7
//   r3 = d                  r4 = log(sig(d)) - log(1 - sig(d))
// Raw-logit semantics feeds the score itself as "dis"; probability semantics
// reads "dis" as the sigmoid-activated output p = sig(d), with the formulas'
// sig(dis) standing for that probability, so r2 and r3 see p while r1 and r4
// are identical under either reading.
double apply_formation(const RewardFormation& formation, double score);

// The trained score rises on generator-like pairs, while the formations above
// expect an expert-likeness score, so the policy reward negates the raw
// discriminator output before applying the formation. With r1 this reproduces
// the policy objective exactly: r1(-score) = -log D.
inline constexpr double kExpertScoreSign = -1.0;

double reward(const DiscriminatorState& disc, const RewardFormation& formation,
              const Eigen::VectorXd& state_goal, const Eigen::VectorXd& action);

// per-step rewards over a trajectory's own (non-relabeled) goals
Eigen::VectorXd reward_trajectory(const DiscriminatorState& disc,
                                  const RewardFormation& formation, const Trajectory& traj);

Eigen::VectorXd reward_batch(const DiscriminatorState& disc, const RewardFormation& formation,
                             const FeaturePairs& pairs);

}  // namespace hgail
