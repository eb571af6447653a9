#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hgail/adversary.hpp"
#include "hgail/grad_check.hpp"
#include "hgail/numeric.hpp"

using namespace hgail;

namespace {

FeaturePairs random_pairs(int n, int sg_dim, Rng& rng, double shift = 0.0) {
  FeaturePairs p;
  p.state_goals.resize(n, sg_dim);
  p.actions.resize(n, 4);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < sg_dim; ++c) p.state_goals(r, c) = rng.uniform(-1, 1) + shift;
    for (int c = 0; c < 4; ++c) p.actions(r, c) = rng.uniform(-1, 1);
  }
  return p;
}

DiscriminatorState zero_disc(int input_dim) {
  Rng rng(1);
  DiscriminatorState disc = make_discriminator(input_dim, rng);
  for (auto& l : disc.net.layers) {
    l.weights.setZero();
    l.biases.setZero();
  }
  return disc;
}

}  // namespace

TEST_CASE("zero-weight discriminator scores 0 with D = 0.5") {
  DiscriminatorState disc = zero_disc(13);
  Eigen::VectorXd sg = Eigen::VectorXd::Constant(9, 0.3);
  Eigen::VectorXd a = Eigen::VectorXd::Constant(4, -0.2);
  const double x = disc_score(disc, sg, a);
  CHECK(x == 0.0);
  CHECK(sigmoid(x) == 0.5);
}

TEST_CASE("scores are finite and D stays inside (0,1) over random inputs") {
  Rng rng(3);
  DiscriminatorState disc = make_discriminator(13, rng);
  for (int i = 0; i < 10000; ++i) {
    Eigen::VectorXd sg(9), a(4);
    for (int k = 0; k < 9; ++k) sg(k) = rng.uniform(-10, 10);
    for (int k = 0; k < 4; ++k) a(k) = rng.uniform(-10, 10);
    const double x = disc_score(disc, sg, a);
    CHECK(std::isfinite(x));
    const double d = sigmoid(x);
    CHECK(d > 0.0);
    CHECK(d < 1.0);
  }
}

TEST_CASE("dimension mismatch is rejected") {
  DiscriminatorState disc = zero_disc(13);
  CHECK_THROWS_AS(disc_score(disc, Eigen::VectorXd::Zero(8), Eigen::VectorXd::Zero(4)),
                  std::invalid_argument);
}

TEST_CASE("loss at the uninformative discriminator is 2 log 2") {
  DiscriminatorState disc = zero_disc(13);
  Rng rng(5);
  const FeaturePairs gen = random_pairs(16, 9, rng);
  const FeaturePairs exp = random_pairs(24, 9, rng);
  auto [loss, grad] = disc_loss_and_grad(disc, gen, exp);
  CHECK(loss == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("empty pair lists are rejected") {
  DiscriminatorState disc = zero_disc(13);
  Rng rng(6);
  const FeaturePairs gen = random_pairs(4, 9, rng);
  FeaturePairs empty;
  empty.state_goals.resize(0, 9);
  empty.actions.resize(0, 4);
  CHECK_THROWS_AS(disc_loss_and_grad(disc, gen, empty), std::invalid_argument);
}

TEST_CASE("discriminator gradient matches central finite differences") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rng rng(seed + 31);
    // small net so the finite-difference sweep stays fast
    DiscriminatorState disc{make_mlp({7, 6, 5, 1}, rng)};
    FeaturePairs gen = random_pairs(6, 3, rng);
    FeaturePairs exp = random_pairs(5, 3, rng);
    auto [loss, grad] = disc_loss_and_grad(disc, gen, exp);
    auto loss_fn = [&](const MlpParams& p) {
      DiscriminatorState probe{p};
      return disc_loss_and_grad(probe, gen, exp).first;
    };
    const GradCheckReport report = grad_check(disc.net, loss_fn, grad, 1e-5);
    CHECK(report.pass);
  }
}

TEST_CASE("200 adam steps fit linearly separable pairs") {
  Rng rng(41);
  DiscriminatorState disc = make_discriminator(7, rng);
  // generator pairs live around +1, expert-like pairs around -1
  const FeaturePairs gen = random_pairs(64, 3, rng, +1.0);
  const FeaturePairs exp = random_pairs(64, 3, rng, -1.0);
  AdamState adam = make_adam_state(disc.net);
  double loss = 0.0;
  for (int s = 0; s < 200; ++s) {
    auto [l, grad] = disc_loss_and_grad(disc, gen, exp);
    adam_step(disc.net, grad, adam, 0.01);
    loss = l;
  }
  CHECK(loss < 0.1);
  // trained orientation: D is high on generator pairs, low on expert pairs
  CHECK(disc_score_batch(disc, gen).mean() > 0.0);
  CHECK(disc_score_batch(disc, exp).mean() < 0.0);
  // and the policy reward is therefore higher on expert-like pairs
  const RewardFormation r1;
  CHECK(reward_batch(disc, r1, exp).mean() > reward_batch(disc, r1, gen).mean());
}

TEST_CASE("formation values at score 0") {
  const RewardFormation r1{RewardKind::kR1};
  const RewardFormation r4{RewardKind::kR4};
  CHECK(apply_formation(r1, 0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(apply_formation(r4, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("r1 is strictly increasing and always positive") {
  const RewardFormation r1{RewardKind::kR1};
  double prev = apply_formation(r1, -30.0);
  CHECK(prev > 0.0);
  for (double x = -29.5; x <= 30.0; x += 0.5) {
    const double cur = apply_formation(r1, x);
    CHECK(cur > prev);
    CHECK(cur > 0.0);
    CHECK(std::isfinite(cur));
    prev = cur;
  }
}

TEST_CASE("r4 equals r3 under raw-logit semantics") {
  const RewardFormation r3{RewardKind::kR3};
  const RewardFormation r4{RewardKind::kR4};
  Rng rng(43);
  for (int i = 0; i < 100000; ++i) {
    const double x = rng.uniform(-30.0, 30.0);
    CHECK(std::abs(apply_formation(r4, x) - apply_formation(r3, x)) < 1e-9);
  }
}

TEST_CASE("r4 and r3 differ under probability semantics") {
  const RewardFormation r3{RewardKind::kR3, ScoreSemantics::kProbability};
  const RewardFormation r4{RewardKind::kR4, ScoreSemantics::kProbability};
  double max_diff = 0.0;
  for (double x = -5.0; x <= 5.0; x += 0.25)
    max_diff = std::max(max_diff, std::abs(apply_formation(r4, x) - apply_formation(r3, x)));
  CHECK(max_diff > 0.1);
}

TEST_CASE("r2 clips and stays finite at non-positive scores") {
  const RewardFormation r2{RewardKind::kR2};
  CHECK(apply_formation(r2, 0.5) == doctest::Approx(std::log(0.5)).epsilon(1e-12));
  CHECK(apply_formation(r2, 3.0) == doctest::Approx(0.0));  // clipped to 1
  CHECK(apply_formation(r2, -2.0) == doctest::Approx(std::log(1e-7)));
  CHECK(std::isfinite(apply_formation(r2, -1e9)));
}

TEST_CASE("rewards are finite for extreme scores under every formation") {
  for (const RewardKind kind : {RewardKind::kR1, RewardKind::kR2, RewardKind::kR3, RewardKind::kR4}) {
    for (const ScoreSemantics sem : {ScoreSemantics::kRawLogit, ScoreSemantics::kProbability}) {
      const RewardFormation f{kind, sem};
      for (const double x : {-700.0, -30.0, 0.0, 30.0, 700.0})
        CHECK(std::isfinite(apply_formation(f, x)));
    }
  }
}

TEST_CASE("zero-weight discriminator gives a constant log-2 reward vector under r1") {
  DiscriminatorState disc = zero_disc(13);
  Trajectory traj;
  traj.task = Task::kReach;
  Rng rng(47);
  for (int t = 0; t < 50; ++t) {
    Transition tr;
    tr.state.gripper_position = Eigen::Vector3d(rng.uniform(0, 1), rng.uniform(0, 1), 0.5);
    tr.goal.target = Eigen::Vector3d(0.5, 0.5, 0.5);
    for (int i = 0; i < 4; ++i) tr.action.delta(i) = rng.normal();
    tr.next_state = tr.state;
    tr.achieved_next = tr.next_state.gripper_position;
    traj.transitions.push_back(tr);
  }
  const Eigen::VectorXd r = reward_trajectory(disc, RewardFormation{}, traj);
  REQUIRE(r.size() == 50);
  for (int t = 0; t < 50; ++t) CHECK(r(t) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("reward_trajectory equals mapping reward over flattened pairs") {
  Rng rng(53);
  DiscriminatorState disc = make_discriminator(13, rng);
  Trajectory traj;
  traj.task = Task::kReach;
  for (int t = 0; t < 20; ++t) {
    Transition tr;
    tr.state.gripper_position = Eigen::Vector3d(rng.uniform(0, 1), rng.uniform(0, 1), 0.1 * t);
    tr.state.gripper_velocity = Eigen::Vector3d(rng.uniform(-1, 1), 0, 0);
    tr.goal.target = Eigen::Vector3d(0.2, 0.8, 0.5);
    for (int i = 0; i < 4; ++i) tr.action.delta(i) = rng.normal();
    tr.next_state = tr.state;
    tr.achieved_next = tr.next_state.gripper_position;
    traj.transitions.push_back(tr);
  }
  const RewardFormation formation{RewardKind::kR1};
  const Eigen::VectorXd via_traj = reward_trajectory(disc, formation, traj);
  TrajectoryBatch batch;
  batch.trajectories.push_back(traj);
  const FeaturePairs pairs = to_feature_pairs(batch);
  for (int t = 0; t < 20; ++t) {
    const double via_scalar = reward(disc, formation, pairs.state_goals.row(t).transpose(),
                                     pairs.actions.row(t).transpose());
    CHECK(via_traj(t) == doctest::Approx(via_scalar).epsilon(1e-12));
  }
}
