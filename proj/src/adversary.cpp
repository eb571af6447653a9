#include "hgail/adversary.hpp"

#include <cmath>
#include <stdexcept>

#include "hgail/numeric.hpp"

namespace hgail {

namespace {

Eigen::MatrixXd assemble_inputs(const DiscriminatorState& disc, const FeaturePairs& pairs) {
  if (pairs.state_goals.cols() + pairs.actions.cols() != disc.input_dim())
    throw std::invalid_argument("discriminator: pair dims do not match network input");
  Eigen::MatrixXd in(pairs.size(), disc.input_dim());
  in.leftCols(pairs.state_goals.cols()) = pairs.state_goals;
  in.rightCols(pairs.actions.cols()) = pairs.actions;
  return in;
}

}  // namespace

DiscriminatorState make_discriminator(int input_dim, Rng& rng) {
  return DiscriminatorState{make_mlp({input_dim, 100, 100, 1}, rng)};
}

double disc_score(const DiscriminatorState& disc, const Eigen::VectorXd& state_goal,
                  const Eigen::VectorXd& action) {
  if (state_goal.size() + action.size() != disc.input_dim())
    throw std::invalid_argument("disc_score: input dims do not match network");
  Eigen::VectorXd in(disc.input_dim());
  in.head(state_goal.size()) = state_goal;
  in.tail(action.size()) = action;
  return forward(disc.net, in)(0);
}

Eigen::VectorXd disc_score_batch(const DiscriminatorState& disc, const FeaturePairs& pairs) {
  return forward_batch(disc.net, assemble_inputs(disc, pairs)).col(0);
}

std::pair<double, Gradient> disc_loss_and_grad(const DiscriminatorState& disc,
                                               const FeaturePairs& generator_pairs,
                                               const FeaturePairs& expert_like_pairs) {
  const Eigen::Index ng = generator_pairs.size();
  const Eigen::Index ne = expert_like_pairs.size();
  if (ng == 0 || ne == 0) throw std::invalid_argument("disc_loss: both pair lists must be non-empty");

  Eigen::MatrixXd inputs(ng + ne, disc.input_dim());
  inputs.topRows(ng) = assemble_inputs(disc, generator_pairs);
  inputs.bottomRows(ne) = assemble_inputs(disc, expert_like_pairs);

  BatchCache cache;
  const Eigen::VectorXd scores = forward_batch(disc.net, inputs, &cache).col(0);

  // -log D = -log_sigmoid(x), -log(1-D) = -log_sigmoid(-x)
  double loss = 0.0;
  Eigen::MatrixXd output_grads(ng + ne, 1);
  for (Eigen::Index i = 0; i < ng; ++i) {
    loss += -log_sigmoid(scores(i)) / static_cast<double>(ng);
    output_grads(i, 0) = -(1.0 - sigmoid(scores(i))) / static_cast<double>(ng);
  }
  for (Eigen::Index i = ng; i < ng + ne; ++i) {
    loss += -log_sigmoid(-scores(i)) / static_cast<double>(ne);
    output_grads(i, 0) = sigmoid(scores(i)) / static_cast<double>(ne);
  }
  Gradient grad = backward_batch(disc.net, cache, output_grads);
  return {loss, std::move(grad)};
}

double apply_formation(const RewardFormation& formation, double score) {
  if (formation.semantics == ScoreSemantics::kRawLogit) {
    switch (formation.kind) {
      case RewardKind::kR1:
        return -log_sigmoid(-score);  // -log(1 - sig(score))
      case RewardKind::kR2:
        return std::log(std::max(clamp01(score), 1e-7));
      case RewardKind::kR3:
        return score;
      case RewardKind::kR4:
        // log(sig) - log(1 - sig), analytically equal to the score itself
        return log_sigmoid(score) - log_sigmoid(-score);
    }
  } else {
    // probability semantics: dis denotes the sigmoid-activated output p, and
    // the formulas' sig(dis) is read as that probability
    switch (formation.kind) {
      case RewardKind::kR1:
        return -log_sigmoid(-score);  // -log(1 - p), identical in both readings
      case RewardKind::kR2:
        return std::log(std::max(clamp01(sigmoid(score)), 1e-7));
      case RewardKind::kR3:
        return sigmoid(score);
      case RewardKind::kR4:
        return log_sigmoid(score) - log_sigmoid(-score);  // log p - log(1-p)
    }
  }
  throw std::logic_error("apply_formation: unknown reward kind");
}

double reward(const DiscriminatorState& disc, const RewardFormation& formation,
              const Eigen::VectorXd& state_goal, const Eigen::VectorXd& action) {
  return apply_formation(formation, kExpertScoreSign * disc_score(disc, state_goal, action));
}

Eigen::VectorXd reward_batch(const DiscriminatorState& disc, const RewardFormation& formation,
                             const FeaturePairs& pairs) {
  const Eigen::VectorXd scores = disc_score_batch(disc, pairs);
  Eigen::VectorXd out(scores.size());
  for (Eigen::Index i = 0; i < scores.size(); ++i)
    out(i) = apply_formation(formation, kExpertScoreSign * scores(i));
  return out;
}

Eigen::VectorXd reward_trajectory(const DiscriminatorState& disc,
                                  const RewardFormation& formation, const Trajectory& traj) {
  TrajectoryBatch view;
  view.trajectories.push_back(traj);
  return reward_batch(disc, formation, to_feature_pairs(view));
}

}  // namespace hgail
