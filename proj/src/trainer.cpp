#include "hgail/trainer.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <stdexcept>

#include "hgail/checkpoint.hpp"

namespace hgail {

GasilBuffer::GasilBuffer(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw std::invalid_argument("gasil buffer: capacity must be >= 1");
}

void GasilBuffer::offer(const Trajectory& traj) {
  if (static_cast<int>(items_.size()) < capacity_) {
    items_.push_back({traj, counter_++});
    return;
  }
  // evict the minimum return; among equals the oldest goes first
  std::size_t worst = 0;
  for (std::size_t i = 1; i < items_.size(); ++i) {
    if (items_[i].traj.episode_return < items_[worst].traj.episode_return ||
        (items_[i].traj.episode_return == items_[worst].traj.episode_return &&
         items_[i].order < items_[worst].order))
      worst = i;
  }
  if (traj.episode_return >= items_[worst].traj.episode_return)
    items_[worst] = {traj, counter_++};
}

double GasilBuffer::min_return() const {
  if (items_.empty()) throw std::logic_error("gasil buffer: empty");
  double m = items_.front().traj.episode_return;
  for (const auto& it : items_) m = std::min(m, it.traj.episode_return);
  return m;
}

std::vector<const Trajectory*> GasilBuffer::trajectories() const {
  std::vector<const Trajectory*> out;
  for (const auto& it : items_) out.push_back(&it.traj);
  return out;
}

FeaturePairs GasilBuffer::pairs() const {
  if (items_.empty()) throw std::logic_error("gasil buffer: empty");
  TrajectoryBatch view;
  for (const auto& it : items_) view.trajectories.push_back(it.traj);
  return to_feature_pairs(view);
}

FeaturePairs sample_rows(const FeaturePairs& pool, int n, Rng& rng) {
  if (pool.size() == 0) throw std::invalid_argument("sample_rows: empty pool");
  FeaturePairs out;
  out.state_goals.resize(n, pool.state_goals.cols());
  out.actions.resize(n, pool.actions.cols());
  for (int i = 0; i < n; ++i) {
    const int k = rng.uniform_int(0, static_cast<int>(pool.size()) - 1);
    out.state_goals.row(i) = pool.state_goals.row(k);
    out.actions.row(i) = pool.actions.row(k);
  }
  return out;
}

TrajectoryBatch collect_expert(const EnvConfig& env_config, int n_episodes, Rng& rng) {
  if (n_episodes < 1) throw std::invalid_argument("collect_expert: n_episodes must be >= 1");
  TrajectoryBatch batch;
  batch.trajectories.resize(n_episodes);
  for (int e = 0; e < n_episodes; ++e) {
    Rng stream = rng.split();
    auto [state, goal] = reset(env_config, stream);
    Trajectory& traj = batch.trajectories[e];
    traj.task = env_config.task;
    for (int t = 0; t < env_config.horizon; ++t) {
      Transition tr;
      tr.state = state;
      tr.goal = goal;
      tr.action = scripted_expert(state, goal, env_config);
      tr.applied_command = executed_command(tr.action, env_config);
      const StepResult sr = step(state, tr.action, goal, env_config);
      tr.next_state = sr.next;
      tr.achieved_next = achieved_goal(sr.next, env_config.task);
      tr.log_prob_behavior = 0.0;  // scripted controller, no density
      traj.episode_return += sr.reward;
      state = sr.next;
      traj.transitions.push_back(std::move(tr));
    }
  }
  return batch;
}

namespace {

std::vector<Eigen::VectorXd> sparse_reward_vectors(const TrajectoryBatch& batch,
                                                   const EnvConfig& env_config) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(batch.trajectories.size());
  for (const auto& traj : batch.trajectories) {
    Eigen::VectorXd r(traj.horizon());
    for (int t = 0; t < traj.horizon(); ++t)
      r(t) = sparse_reward(traj.transitions[t].next_state, traj.transitions[t].goal, env_config);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Eigen::VectorXd> discriminator_reward_vectors(const TrainerState& state,
                                                          const TrajectoryBatch& batch) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(batch.trajectories.size());
  for (const auto& traj : batch.trajectories)
    out.push_back(reward_trajectory(state.disc, state.config.reward, traj));
  return out;
}

double discriminator_step(TrainerState& state, const FeaturePairs& negatives,
                          const FeaturePairs& positives) {
  const int half = state.config.disc_batch / 2;
  const FeaturePairs gen_mb = sample_rows(negatives, half, state.rng);
  const FeaturePairs pos_mb = sample_rows(positives, half, state.rng);
  auto [loss, grad] = disc_loss_and_grad(state.disc, gen_mb, pos_mb);
  if (!all_finite(grad)) throw std::runtime_error("trainer: non-finite discriminator gradient");
  adam_step(state.disc.net, grad, state.disc_adam, state.config.disc_learning_rate);
  if (!all_finite(state.disc.net))
    throw std::runtime_error("trainer: discriminator parameters went non-finite");
  state.last_disc_loss = loss;
  return loss;
}

MetricsRecord make_record(TrainerState& state, int iteration) {
  Rng stream = state.eval_rng.split();
  const EvalStats stats =
      evaluate_policy(state.policy, state.config.env, state.config.eval_episodes, stream);
  MetricsRecord rec;
  rec.iteration = iteration;
  rec.success_rate = stats.success_rate;
  rec.distance_error_mean = stats.distance_mean;
  rec.distance_error_std = stats.distance_std;
  rec.disc_loss = state.last_disc_loss;
  rec.policy_surrogate = state.last_surrogate;
  rec.clip_fraction = state.last_clip_fraction;
  rec.entropy = policy_entropy(state.policy);
  return rec;
}

}  // namespace

FeaturePairs expert_pair_pool(TrainerState& state, const TrajectoryBatch& fresh) {
  switch (state.config.algorithm) {
    case Algorithm::kHgail: {
      if (!state.config.hindsight.curriculum) return state.frozen_hindsight->pairs();
      const auto relabeled = relabel_batch(fresh, state.config.hindsight, state.rng);
      return to_feature_pairs(std::span<const RelabeledTrajectory>(relabeled));
    }
    case Algorithm::kGailDemo:
      return to_feature_pairs(state.demos);
    case Algorithm::kGasil:
      return state.gasil.pairs();
    case Algorithm::kHgailNo:
      return to_feature_pairs(fresh);
    case Algorithm::kPpoSparse:
      throw std::logic_error("expert_pair_pool: the plain-PPO baseline has no discriminator");
  }
  throw std::logic_error("expert_pair_pool: unknown algorithm");
}

TrainerState pretrain(const TrainConfig& config) {
  validate(config);
  TrainerState state;
  state.config = config;
  state.rng = Rng(config.seed);

  const int in_dim = observation_dim(config.env.task) + 3;
  state.policy = make_policy({in_dim, 64, 64, 4}, config.policy_cov, state.rng,
                             config.learnable_std);
  state.value = make_value_net(in_dim, state.rng);
  state.disc = make_discriminator(in_dim + 4, state.rng);
  state.policy_adam = make_adam_state(state.policy.mean_net);
  state.value_adam = make_adam_state(state.value.net);
  state.disc_adam = make_adam_state(state.disc.net);
  state.eval_rng = state.rng.split();
  state.gasil = GasilBuffer(config.gasil_capacity);

  if (config.algorithm == Algorithm::kPpoSparse) return state;

  state.initial_rollouts =
      collect(state.policy, config.env, config.episodes_per_batch, state.rng, 0);
  const TrajectoryBatch& tau0 = state.initial_rollouts;

  FeaturePairs positives;
  switch (config.algorithm) {
    case Algorithm::kHgail: {
      state.initial_relabeled = relabel_batch(tau0, config.hindsight, state.rng);
      state.frozen_hindsight.emplace(state.initial_relabeled);
      positives = state.frozen_hindsight->pairs();
      break;
    }
    case Algorithm::kGailDemo: {
      state.demos = collect_expert(config.env, config.demo_episodes, state.rng);
      positives = to_feature_pairs(state.demos);
      break;
    }
    case Algorithm::kGasil: {
      for (const auto& traj : tau0.trajectories) state.gasil.offer(traj);
      positives = state.gasil.pairs();
      break;
    }
    case Algorithm::kHgailNo: {
      positives = to_feature_pairs(tau0);
      break;
    }
    case Algorithm::kPpoSparse:
      break;
  }

  mle_pretrain(state.policy, positives, config.pretrain_gen_steps, config.pretrain_gen_lr,
               config.ppo.minibatch_size, state.rng);

  const FeaturePairs negatives = to_feature_pairs(tau0);
  for (int s = 0; s < config.pretrain_disc_steps; ++s)
    discriminator_step(state, negatives, positives);
  return state;
}

MetricsRecord train_iteration(TrainerState& state, int iteration) {
  const TrainConfig& cfg = state.config;

  double surrogate_sum = 0.0;
  double clip_sum = 0.0;
  for (int g = 0; g < cfg.g_steps; ++g) {
    TrajectoryBatch batch =
        collect(state.policy, cfg.env, cfg.episodes_per_batch, state.rng, state.policy_version);
    if (cfg.algorithm == Algorithm::kGasil)
      for (const auto& traj : batch.trajectories) state.gasil.offer(traj);

    const std::vector<Eigen::VectorXd> rewards =
        cfg.algorithm == Algorithm::kPpoSparse ? sparse_reward_vectors(batch, cfg.env)
                                               : discriminator_reward_vectors(state, batch);
    const AdvantageBatch adv = compute_advantages(batch, rewards, state.value, cfg.ppo);
    const PpoDiagnostics diag = ppo_update(state.policy, state.value, adv, cfg.ppo,
                                           state.policy_adam, state.value_adam, state.rng);
    if (!diag.ok || !all_finite(state.policy.mean_net) || !all_finite(state.value.net))
      throw std::runtime_error("trainer: policy update aborted, non-finite gradient at iteration " +
                               std::to_string(iteration));
    ++state.policy_version;
    surrogate_sum += diag.surrogate_loss;
    clip_sum += diag.clip_fraction;
  }
  if (cfg.g_steps > 0) {
    state.last_surrogate = surrogate_sum / cfg.g_steps;
    state.last_clip_fraction = clip_sum / cfg.g_steps;
  }

  if (cfg.algorithm != Algorithm::kPpoSparse) {
    double disc_sum = 0.0;
    for (int d = 0; d < cfg.d_steps; ++d) {
      const TrajectoryBatch fresh =
          collect(state.policy, cfg.env, cfg.episodes_per_batch, state.rng, state.policy_version);
      const FeaturePairs positives = expert_pair_pool(state, fresh);
      disc_sum += discriminator_step(state, to_feature_pairs(fresh), positives);
    }
    if (cfg.d_steps > 0) state.last_disc_loss = disc_sum / cfg.d_steps;
  }

  return make_record(state, iteration);
}

RunResult run(const TrainConfig& config, const std::filesystem::path* out_dir, bool verbose) {
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&start] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  RunResult result{.curve = {}, .state = pretrain(config)};
  TrainerState& state = result.state;

  auto persist_curve = [&] {
    if (out_dir) write_curve(result.curve, *out_dir / "curve.csv");
  };
  auto persist_checkpoints = [&](const std::string& suffix) {
    if (!out_dir) return;
    save_policy(state.policy, *out_dir / ("policy" + suffix + ".ckpt"));
    save_mlp(state.value.net, *out_dir / ("value" + suffix + ".ckpt"));
    save_mlp(state.disc.net, *out_dir / ("disc" + suffix + ".ckpt"));
  };

  MetricsRecord rec0 = make_record(state, 0);
  rec0.wall_time = elapsed();
  result.curve.push_back(rec0);
  persist_curve();

  for (int it = 1; it <= config.iterations; ++it) {
    MetricsRecord rec = train_iteration(state, it);
    rec.wall_time = elapsed();
    result.curve.push_back(rec);
    persist_curve();
    if (config.checkpoint_interval > 0 && it % config.checkpoint_interval == 0) {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "_%06d", it);
      persist_checkpoints(buf);
    }
    if (verbose && (it % 25 == 0 || it == config.iterations)) {
      std::cout << "iter " << it << "  success " << rec.success_rate << "  dist "
                << rec.distance_error_mean << "  disc_loss " << rec.disc_loss << "  ["
                << rec.wall_time << "s]" << std::endl;
    }
    if (config.early_stop && static_cast<int>(result.curve.size()) > config.early_stop_window) {
      double acc = 0.0;
      for (int k = 0; k < config.early_stop_window; ++k)
        acc += result.curve[result.curve.size() - 1 - k].success_rate;
      if (acc / config.early_stop_window >= config.early_stop_threshold) {
        if (verbose) std::cout << "early stop at iteration " << it << std::endl;
        break;
      }
    }
  }
  persist_checkpoints("");
  return result;
}

RunResult run_baseline_gail_demo(TrainConfig config, const std::filesystem::path* out_dir) {
  config.algorithm = Algorithm::kGailDemo;
  return run(config, out_dir);
}
RunResult run_baseline_gasil(TrainConfig config, const std::filesystem::path* out_dir) {
  config.algorithm = Algorithm::kGasil;
  return run(config, out_dir);
}
RunResult run_baseline_hgail_no(TrainConfig config, const std::filesystem::path* out_dir) {
  config.algorithm = Algorithm::kHgailNo;
  return run(config, out_dir);
}

namespace {

EvalStats evaluate_with(const EnvConfig& env_config, int episodes, Rng& rng,
                        const GaussianPolicy* policy) {
  if (episodes < 1) throw std::invalid_argument("evaluate: episodes must be >= 1");
  validate(env_config);
  const int obs_dim = observation_dim(env_config.task);

  std::vector<Rng> streams;
  for (int e = 0; e < episodes; ++e) streams.push_back(rng.split());
  std::vector<GoalObservation> states(episodes);
  std::vector<Goal> goals(episodes);
  std::vector<int> last_reward(episodes, -1);
  for (int e = 0; e < episodes; ++e) std::tie(states[e], goals[e]) = reset(env_config, streams[e]);

  Eigen::MatrixXd inputs(episodes, obs_dim + 3);
  for (int t = 0; t < env_config.horizon; ++t) {
    Eigen::MatrixXd means;
    if (policy) {
      for (int e = 0; e < episodes; ++e) {
        inputs.row(e).head(obs_dim) = observation_vector(states[e], env_config.task).transpose();
        inputs.row(e).tail(3) = goals[e].target.transpose();
      }
      means = policy_mean_batch(*policy, inputs);
    }
    for (int e = 0; e < episodes; ++e) {
      Action a;
      if (policy) {
        a.delta = means.row(e).transpose();  // mean action, no sampling noise
      } else {
        a = scripted_expert(states[e], goals[e], env_config);
      }
      const StepResult sr = step(states[e], a, goals[e], env_config);
      states[e] = sr.next;
      last_reward[e] = sr.reward;
    }
  }

  EvalStats stats;
  stats.episodes = episodes;
  int hits = 0;
  for (int e = 0; e < episodes; ++e) {
    if (last_reward[e] == 0) ++hits;
    const Eigen::Vector3d achieved = achieved_goal(states[e], env_config.task);
    stats.l1_distances.push_back(distance_error(achieved, goals[e].target));
    stats.l2_distances.push_back((achieved - goals[e].target).norm());
  }
  stats.success_rate = static_cast<double>(hits) / episodes;
  double mean = 0.0;
  for (double d : stats.l1_distances) mean += d;
  mean /= episodes;
  double var = 0.0;
  for (double d : stats.l1_distances) var += (d - mean) * (d - mean);
  stats.distance_mean = mean;
  stats.distance_std = std::sqrt(var / episodes);
  return stats;
}

}  // namespace

EvalStats evaluate_policy(const GaussianPolicy& policy, const EnvConfig& env_config, int episodes,
                          Rng& rng) {
  return evaluate_with(env_config, episodes, rng, &policy);
}

EvalStats evaluate_scripted_expert(const EnvConfig& env_config, int episodes, Rng& rng) {
  return evaluate_with(env_config, episodes, rng, nullptr);
}

}  // namespace hgail
