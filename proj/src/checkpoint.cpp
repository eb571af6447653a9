#include "hgail/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace hgail {

namespace {

constexpr char kMlpMagic[] = "HGMLP001";
constexpr char kPolicyMagic[] = "HGPOL001";
constexpr char kExpertMagic[] = "HGEXPERT1";
constexpr char kBatchMagic[] = "HGTB0001";

void write_bytes(std::ofstream& out, const void* data, std::size_t n) {
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
}

void write_u32(std::ofstream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  write_bytes(out, b, 4);
}

void write_f64(std::ofstream& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  write_bytes(out, b, 8);
}

std::uint32_t read_u32(std::ifstream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) throw std::runtime_error("checkpoint: truncated file");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

double read_f64(std::ifstream& in) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) throw std::runtime_error("checkpoint: truncated file");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

void write_magic(std::ofstream& out, const char* magic) {
  write_bytes(out, magic, std::strlen(magic));
}

void expect_magic(std::ifstream& in, const char* magic, const std::filesystem::path& path) {
  const std::size_t n = std::strlen(magic);
  std::string got(n, '\0');
  if (!in.read(got.data(), static_cast<std::streamsize>(n)) || got != magic)
    throw std::runtime_error("checkpoint: " + path.string() + " does not carry magic " + magic);
}

void write_mlp_block(std::ofstream& out, const MlpParams& params) {
  write_u32(out, static_cast<std::uint32_t>(params.layers.size()));
  for (const auto& l : params.layers) {
    write_u32(out, static_cast<std::uint32_t>(l.weights.rows()));
    write_u32(out, static_cast<std::uint32_t>(l.weights.cols()));
    for (Eigen::Index r = 0; r < l.weights.rows(); ++r)
      for (Eigen::Index c = 0; c < l.weights.cols(); ++c) write_f64(out, l.weights(r, c));
    for (Eigen::Index k = 0; k < l.biases.size(); ++k) write_f64(out, l.biases(k));
  }
}

MlpParams read_mlp_block(std::ifstream& in) {
  MlpParams params;
  const std::uint32_t n_layers = read_u32(in);
  if (n_layers == 0 || n_layers > 64) throw std::runtime_error("checkpoint: bad layer count");
  for (std::uint32_t i = 0; i < n_layers; ++i) {
    const std::uint32_t rows = read_u32(in);
    const std::uint32_t cols = read_u32(in);
    if (rows == 0 || cols == 0 || rows > 100000 || cols > 100000)
      throw std::runtime_error("checkpoint: bad layer shape");
    Layer l;
    l.weights.resize(rows, cols);
    for (std::uint32_t r = 0; r < rows; ++r)
      for (std::uint32_t c = 0; c < cols; ++c) l.weights(r, c) = read_f64(in);
    l.biases.resize(rows);
    for (std::uint32_t k = 0; k < rows; ++k) l.biases(k) = read_f64(in);
    params.layers.push_back(std::move(l));
  }
  validate_shape(params);
  return params;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("checkpoint: cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("checkpoint: cannot open " + path.string());
  return in;
}

}  // namespace

void save_mlp(const MlpParams& params, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_magic(out, kMlpMagic);
  write_mlp_block(out, params);
  if (!out) throw std::runtime_error("checkpoint: write failed for " + path.string());
}

MlpParams load_mlp(const std::filesystem::path& path) {
  auto in = open_in(path);
  expect_magic(in, kMlpMagic, path);
  return read_mlp_block(in);
}

void save_policy(const GaussianPolicy& policy, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_magic(out, kPolicyMagic);
  write_u32(out, policy.learnable_std ? 1 : 0);
  write_f64(out, policy.covariance);
  write_u32(out, static_cast<std::uint32_t>(policy.action_dim()));
  for (int i = 0; i < policy.action_dim(); ++i)
    write_f64(out, policy.learnable_std ? policy.log_std(i) : 0.0);
  write_mlp_block(out, policy.mean_net);
  if (!out) throw std::runtime_error("checkpoint: write failed for " + path.string());
}

GaussianPolicy load_policy(const std::filesystem::path& path) {
  auto in = open_in(path);
  expect_magic(in, kPolicyMagic, path);
  GaussianPolicy p;
  p.learnable_std = read_u32(in) != 0;
  p.covariance = read_f64(in);
  const std::uint32_t dim = read_u32(in);
  Eigen::VectorXd log_std(dim);
  for (std::uint32_t i = 0; i < dim; ++i) log_std(i) = read_f64(in);
  if (p.learnable_std) p.log_std = log_std;
  p.mean_net = read_mlp_block(in);
  if (p.mean_net.output_dim() != static_cast<int>(dim))
    throw std::runtime_error("checkpoint: policy action dim does not match mean net");
  return p;
}

void save_expert_checkpoint(const std::filesystem::path& path) {
  auto out = open_out(path);
  write_magic(out, kExpertMagic);
}

bool is_expert_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::string got(std::strlen(kExpertMagic), '\0');
  return in.read(got.data(), static_cast<std::streamsize>(got.size())) && got == kExpertMagic;
}

namespace {

void write_observation(std::ofstream& out, const GoalObservation& obs, Task task) {
  for (int i = 0; i < 3; ++i) write_f64(out, obs.gripper_position(i));
  for (int i = 0; i < 3; ++i) write_f64(out, obs.gripper_velocity(i));
  if (task == Task::kGrasp) {
    for (int i = 0; i < 3; ++i) write_f64(out, (*obs.object_position)(i));
    write_f64(out, *obs.gripper_aperture);
  }
}

GoalObservation read_observation(std::ifstream& in, Task task) {
  GoalObservation obs;
  for (int i = 0; i < 3; ++i) obs.gripper_position(i) = read_f64(in);
  for (int i = 0; i < 3; ++i) obs.gripper_velocity(i) = read_f64(in);
  if (task == Task::kGrasp) {
    Eigen::Vector3d object;
    for (int i = 0; i < 3; ++i) object(i) = read_f64(in);
    obs.object_position = object;
    obs.gripper_aperture = read_f64(in);
  }
  return obs;
}

}  // namespace

void save_trajectory_batch(const TrajectoryBatch& batch, const std::filesystem::path& path) {
  if (batch.trajectories.empty())
    throw std::invalid_argument("save_trajectory_batch: empty batch");
  const Task task = batch.trajectories.front().task;
  const int horizon = batch.trajectories.front().horizon();
  for (const auto& t : batch.trajectories)
    if (t.task != task || t.horizon() != horizon)
      throw std::invalid_argument("save_trajectory_batch: non-uniform batch");

  auto out = open_out(path);
  write_magic(out, kBatchMagic);
  write_u32(out, task == Task::kReach ? 0 : 1);
  write_u32(out, static_cast<std::uint32_t>(batch.trajectories.size()));
  write_u32(out, static_cast<std::uint32_t>(horizon));
  write_u32(out, static_cast<std::uint32_t>(batch.policy_version));
  for (const auto& traj : batch.trajectories) {
    write_f64(out, traj.episode_return);
    for (const auto& tr : traj.transitions) {
      write_observation(out, tr.state, task);
      for (int i = 0; i < 3; ++i) write_f64(out, tr.goal.target(i));
      for (int i = 0; i < 4; ++i) write_f64(out, tr.action.delta(i));
      for (int i = 0; i < 4; ++i) write_f64(out, tr.applied_command(i));
      write_observation(out, tr.next_state, task);
      for (int i = 0; i < 3; ++i) write_f64(out, tr.achieved_next(i));
      write_f64(out, tr.log_prob_behavior);
    }
  }
  if (!out) throw std::runtime_error("checkpoint: write failed for " + path.string());
}

TrajectoryBatch load_trajectory_batch(const std::filesystem::path& path) {
  auto in = open_in(path);
  expect_magic(in, kBatchMagic, path);
  const Task task = read_u32(in) == 0 ? Task::kReach : Task::kGrasp;
  const std::uint32_t n_traj = read_u32(in);
  const std::uint32_t horizon = read_u32(in);
  TrajectoryBatch batch;
  batch.policy_version = static_cast<int>(read_u32(in));
  for (std::uint32_t i = 0; i < n_traj; ++i) {
    Trajectory traj;
    traj.task = task;
    traj.episode_return = read_f64(in);
    for (std::uint32_t t = 0; t < horizon; ++t) {
      Transition tr;
      tr.state = read_observation(in, task);
      for (int k = 0; k < 3; ++k) tr.goal.target(k) = read_f64(in);
      for (int k = 0; k < 4; ++k) tr.action.delta(k) = read_f64(in);
      for (int k = 0; k < 4; ++k) tr.applied_command(k) = read_f64(in);
      tr.next_state = read_observation(in, task);
      for (int k = 0; k < 3; ++k) tr.achieved_next(k) = read_f64(in);
      tr.log_prob_behavior = read_f64(in);
      traj.transitions.push_back(std::move(tr));
    }
    batch.trajectories.push_back(std::move(traj));
  }
  return batch;
}

}  // namespace hgail
