#include "hgail/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hgail/metrics.hpp"

namespace hgail {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  const auto end = s.find_last_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  return s.substr(begin, end - begin + 1);
}

}  // namespace

ConfigMap ConfigMap::parse_text(const std::string& text, const std::string& origin) {
  ConfigMap map;
  map.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(origin + ":" + std::to_string(lineno) +
                               ": expected `key = value`, got: " + stripped);
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": empty key");
    if (map.entries_.count(key))
      throw std::runtime_error(origin + ":" + std::to_string(lineno) + ": duplicate key " + key);
    map.entries_[key] = value;
  }
  return map;
}

ConfigMap ConfigMap::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path.string());
}

bool ConfigMap::has(const std::string& key) const { return entries_.count(key) > 0; }

double ConfigMap::get_double(const std::string& key, double fallback) {
  consumed_.insert(key);
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::runtime_error("config: key " + key + " expects a number, got `" + it->second + "`");
  }
}

int ConfigMap::get_int(const std::string& key, int fallback) {
  consumed_.insert(key);
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const long v = std::stol(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return static_cast<int>(v);
  } catch (...) {
    throw std::runtime_error("config: key " + key + " expects an integer, got `" + it->second + "`");
  }
}

std::uint64_t ConfigMap::get_u64(const std::string& key, std::uint64_t fallback) {
  consumed_.insert(key);
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::runtime_error("config: key " + key + " expects an unsigned integer, got `" +
                             it->second + "`");
  }
}

bool ConfigMap::get_bool(const std::string& key, bool fallback) {
  consumed_.insert(key);
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  if (it->second == "true" || it->second == "1") return true;
  if (it->second == "false" || it->second == "0") return false;
  throw std::runtime_error("config: key " + key + " expects true/false, got `" + it->second + "`");
}

std::string ConfigMap::get_string(const std::string& key, const std::string& fallback) {
  consumed_.insert(key);
  auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

std::vector<double> ConfigMap::get_doubles(const std::string& key,
                                           const std::vector<double>& fallback) {
  consumed_.insert(key);
  auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::istringstream ss(it->second);
  std::vector<double> out;
  std::string tok;
  while (ss >> tok) {
    try {
      out.push_back(std::stod(tok));
    } catch (...) {
      throw std::runtime_error("config: key " + key + " expects numbers, got `" + it->second + "`");
    }
  }
  return out;
}

void ConfigMap::set(const std::string& key, const std::string& value) { entries_[key] = value; }

void ConfigMap::ensure_all_consumed() const {
  std::vector<std::string> unknown;
  for (const auto& [key, value] : entries_)
    if (!consumed_.count(key)) unknown.push_back(key);
  if (!unknown.empty()) {
    std::string msg = "config: unknown key(s):";
    for (const auto& k : unknown) msg += " " + k;
    throw std::runtime_error(msg + " (in " + origin_ + ")");
  }
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kHgail: return "hgail";
    case Algorithm::kGailDemo: return "gail_demo";
    case Algorithm::kPpoSparse: return "ppo_sparse";
    case Algorithm::kGasil: return "gasil";
    case Algorithm::kHgailNo: return "hgail_no";
  }
  return "?";
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "hgail") return Algorithm::kHgail;
  if (s == "gail_demo") return Algorithm::kGailDemo;
  if (s == "ppo_sparse") return Algorithm::kPpoSparse;
  if (s == "gasil") return Algorithm::kGasil;
  if (s == "hgail_no") return Algorithm::kHgailNo;
  throw std::runtime_error("config: unknown algorithm `" + s + "`");
}

std::string to_string(Task t) { return t == Task::kReach ? "reach" : "grasp"; }
std::string to_string(HindsightStrategy s) {
  return s == HindsightStrategy::kFuture ? "future" : "final";
}
std::string to_string(RewardKind k) {
  switch (k) {
    case RewardKind::kR1: return "r1";
    case RewardKind::kR2: return "r2";
    case RewardKind::kR3: return "r3";
    case RewardKind::kR4: return "r4";
  }
  return "?";
}
std::string to_string(ScoreSemantics s) {
  return s == ScoreSemantics::kRawLogit ? "raw_logit" : "probability";
}

namespace {

Task task_from_string(const std::string& s) {
  if (s == "reach") return Task::kReach;
  if (s == "grasp") return Task::kGrasp;
  throw std::runtime_error("config: key task expects reach|grasp, got `" + s + "`");
}

HindsightStrategy strategy_from_string(const std::string& s) {
  if (s == "future") return HindsightStrategy::kFuture;
  if (s == "final") return HindsightStrategy::kFinal;
  throw std::runtime_error("config: key strategy expects future|final, got `" + s + "`");
}

RewardKind reward_from_string(const std::string& s) {
  if (s == "r1") return RewardKind::kR1;
  if (s == "r2") return RewardKind::kR2;
  if (s == "r3") return RewardKind::kR3;
  if (s == "r4") return RewardKind::kR4;
  throw std::runtime_error("config: key reward_formation expects r1|r2|r3|r4, got `" + s + "`");
}

ScoreSemantics semantics_from_string(const std::string& s) {
  if (s == "raw_logit") return ScoreSemantics::kRawLogit;
  if (s == "probability") return ScoreSemantics::kProbability;
  throw std::runtime_error(
      "config: key score_semantics expects raw_logit|probability, got `" + s + "`");
}

const std::vector<std::string> kSchemaKeys = {
    "task", "bounds", "max_step", "horizon", "success_radius", "damping",
    "algorithm", "seed", "iterations", "episodes_per_batch", "g_steps", "d_steps",
    "pretrain_gen_steps", "pretrain_disc_steps", "pretrain_gen_lr",
    "strategy", "p_ht", "curriculum",
    "clip_ratio", "gae_lambda", "gamma", "epochs_per_batch", "minibatch_size",
    "learning_rate", "entropy_weight", "normalize_advantages",
    "policy_cov", "learnable_std",
    "reward_formation", "score_semantics", "disc_learning_rate", "disc_batch",
    "gasil_capacity", "demo_episodes", "eval_episodes", "checkpoint_interval",
    "early_stop", "early_stop_threshold", "early_stop_window",
};

}  // namespace

const std::vector<std::string>& config_schema_keys() { return kSchemaKeys; }

void validate(const TrainConfig& config) {
  validate(config.env);
  validate(config.hindsight);
  validate(config.ppo);
  if (config.iterations < 0) throw std::invalid_argument("config: iterations must be >= 0");
  if (config.episodes_per_batch < 1)
    throw std::invalid_argument("config: episodes_per_batch must be >= 1");
  if (config.g_steps < 0) throw std::invalid_argument("config: g_steps must be >= 0");
  if (config.d_steps < 0) throw std::invalid_argument("config: d_steps must be >= 0");
  if (config.pretrain_gen_steps < 0 || config.pretrain_disc_steps < 0)
    throw std::invalid_argument("config: pretrain steps must be >= 0");
  if (config.policy_cov <= 0.0) throw std::invalid_argument("config: policy_cov must be > 0");
  if (config.disc_learning_rate <= 0.0 || config.disc_batch < 2)
    throw std::invalid_argument("config: discriminator optimizer settings invalid");
  if (config.gasil_capacity < 1) throw std::invalid_argument("config: gasil_capacity must be >= 1");
  if (config.demo_episodes < 1) throw std::invalid_argument("config: demo_episodes must be >= 1");
  if (config.eval_episodes < 1) throw std::invalid_argument("config: eval_episodes must be >= 1");
}

TrainConfig load_train_config(ConfigMap& map) {
  TrainConfig c;
  c.env.task = task_from_string(map.get_string("task", "reach"));
  const std::vector<double> bounds = map.get_doubles("bounds", {0, 0, 0, 1, 1, 1});
  if (bounds.size() != 6)
    throw std::runtime_error("config: key bounds expects 6 numbers (lo xyz, hi xyz)");
  c.env.workspace_lo = Eigen::Vector3d(bounds[0], bounds[1], bounds[2]);
  c.env.workspace_hi = Eigen::Vector3d(bounds[3], bounds[4], bounds[5]);
  c.env.max_step = map.get_double("max_step", c.env.max_step);
  c.env.horizon = map.get_int("horizon", c.env.horizon);
  c.env.success_radius = map.get_double("success_radius", c.env.success_radius);
  c.env.damping = map.get_double("damping", c.env.damping);

  c.algorithm = algorithm_from_string(map.get_string("algorithm", "hgail"));
  c.seed = map.get_u64("seed", c.seed);
  c.iterations = map.get_int("iterations", c.iterations);
  c.episodes_per_batch = map.get_int("episodes_per_batch", c.episodes_per_batch);
  c.g_steps = map.get_int("g_steps", c.g_steps);
  c.d_steps = map.get_int("d_steps", c.d_steps);
  c.pretrain_gen_steps = map.get_int("pretrain_gen_steps", c.pretrain_gen_steps);
  c.pretrain_disc_steps = map.get_int("pretrain_disc_steps", c.pretrain_disc_steps);
  c.pretrain_gen_lr = map.get_double("pretrain_gen_lr", c.pretrain_gen_lr);

  c.hindsight.strategy = strategy_from_string(map.get_string("strategy", "future"));
  c.hindsight.p_ht = map.get_double("p_ht", c.hindsight.p_ht);
  c.hindsight.curriculum = map.get_bool("curriculum", c.hindsight.curriculum);

  c.ppo.clip_ratio = map.get_double("clip_ratio", c.ppo.clip_ratio);
  c.ppo.gae_lambda = map.get_double("gae_lambda", c.ppo.gae_lambda);
  c.ppo.discount = map.get_double("gamma", c.ppo.discount);
  c.ppo.epochs_per_batch = map.get_int("epochs_per_batch", c.ppo.epochs_per_batch);
  c.ppo.minibatch_size = map.get_int("minibatch_size", c.ppo.minibatch_size);
  c.ppo.learning_rate = map.get_double("learning_rate", c.ppo.learning_rate);
  c.ppo.entropy_weight = map.get_double("entropy_weight", c.ppo.entropy_weight);
  c.ppo.normalize_advantages = map.get_bool("normalize_advantages", c.ppo.normalize_advantages);

  c.policy_cov = map.get_double("policy_cov", c.policy_cov);
  c.learnable_std = map.get_bool("learnable_std", c.learnable_std);

  c.reward.kind = reward_from_string(map.get_string("reward_formation", "r1"));
  c.reward.semantics = semantics_from_string(map.get_string("score_semantics", "raw_logit"));
  c.disc_learning_rate = map.get_double("disc_learning_rate", c.disc_learning_rate);
  c.disc_batch = map.get_int("disc_batch", c.disc_batch);

  c.gasil_capacity = map.get_int("gasil_capacity", c.gasil_capacity);
  c.demo_episodes = map.get_int("demo_episodes", c.demo_episodes);
  c.eval_episodes = map.get_int("eval_episodes", c.eval_episodes);
  c.checkpoint_interval = map.get_int("checkpoint_interval", c.checkpoint_interval);
  c.early_stop = map.get_bool("early_stop", c.early_stop);
  c.early_stop_threshold = map.get_double("early_stop_threshold", c.early_stop_threshold);
  c.early_stop_window = map.get_int("early_stop_window", c.early_stop_window);

  map.ensure_all_consumed();
  validate(c);
  return c;
}

TrainConfig load_train_config_file(const std::filesystem::path& path) {
  ConfigMap map = ConfigMap::parse_file(path);
  return load_train_config(map);
}

std::string serialize_config(const TrainConfig& c) {
  std::ostringstream out;
  out << "task = " << to_string(c.env.task) << '\n';
  out << "bounds =";
  for (int i = 0; i < 3; ++i) out << ' ' << format_double(c.env.workspace_lo(i));
  for (int i = 0; i < 3; ++i) out << ' ' << format_double(c.env.workspace_hi(i));
  out << '\n';
  out << "max_step = " << format_double(c.env.max_step) << '\n';
  out << "horizon = " << c.env.horizon << '\n';
  out << "success_radius = " << format_double(c.env.success_radius) << '\n';
  out << "damping = " << format_double(c.env.damping) << '\n';
  out << "algorithm = " << to_string(c.algorithm) << '\n';
  out << "seed = " << c.seed << '\n';
  out << "iterations = " << c.iterations << '\n';
  out << "episodes_per_batch = " << c.episodes_per_batch << '\n';
  out << "g_steps = " << c.g_steps << '\n';
  out << "d_steps = " << c.d_steps << '\n';
  out << "pretrain_gen_steps = " << c.pretrain_gen_steps << '\n';
  out << "pretrain_disc_steps = " << c.pretrain_disc_steps << '\n';
  out << "pretrain_gen_lr = " << format_double(c.pretrain_gen_lr) << '\n';
  out << "strategy = " << to_string(c.hindsight.strategy) << '\n';
  out << "p_ht = " << format_double(c.hindsight.p_ht) << '\n';
  out << "curriculum = " << (c.hindsight.curriculum ? "true" : "false") << '\n';
  out << "clip_ratio = " << format_double(c.ppo.clip_ratio) << '\n';
  out << "gae_lambda = " << format_double(c.ppo.gae_lambda) << '\n';
  out << "gamma = " << format_double(c.ppo.discount) << '\n';
  out << "epochs_per_batch = " << c.ppo.epochs_per_batch << '\n';
  out << "minibatch_size = " << c.ppo.minibatch_size << '\n';
  out << "learning_rate = " << format_double(c.ppo.learning_rate) << '\n';
  out << "entropy_weight = " << format_double(c.ppo.entropy_weight) << '\n';
  out << "normalize_advantages = " << (c.ppo.normalize_advantages ? "true" : "false") << '\n';
  out << "policy_cov = " << format_double(c.policy_cov) << '\n';
  out << "learnable_std = " << (c.learnable_std ? "true" : "false") << '\n';
  out << "reward_formation = " << to_string(c.reward.kind) << '\n';
  out << "score_semantics = " << to_string(c.reward.semantics) << '\n';
  out << "disc_learning_rate = " << format_double(c.disc_learning_rate) << '\n';
  out << "disc_batch = " << c.disc_batch << '\n';
  out << "gasil_capacity = " << c.gasil_capacity << '\n';
  out << "demo_episodes = " << c.demo_episodes << '\n';
  out << "eval_episodes = " << c.eval_episodes << '\n';
  out << "checkpoint_interval = " << c.checkpoint_interval << '\n';
  out << "early_stop = " << (c.early_stop ? "true" : "false") << '\n';
  out << "early_stop_threshold = " << format_double(c.early_stop_threshold) << '\n';
  out << "early_stop_window = " << c.early_stop_window << '\n';
  return out.str();
}

void apply_overrides(ConfigMap& map, const std::vector<std::string>& overrides) {
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("override `" + o + "` is not of the form key=value");
    const std::string key = trim(o.substr(0, eq));
    const std::string value = trim(o.substr(eq + 1));
    if (std::find(kSchemaKeys.begin(), kSchemaKeys.end(), key) == kSchemaKeys.end())
      throw std::runtime_error("override key `" + key + "` is not in the config schema");
    map.set(key, value);
  }
}

}  // namespace hgail
