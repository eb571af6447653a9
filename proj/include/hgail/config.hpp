#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "hgail/adversary.hpp"
#include "hgail/env.hpp"
#include "hgail/hindsight.hpp"
#include "hgail/optim.hpp"

namespace hgail {

// Flat `key = value` text config. Lines starting with '#' and blank lines are
// ignored. Every key must belong to the schema; unknown keys are hard errors.
class ConfigMap {
 public:
  static ConfigMap parse_file(const std::filesystem::path& path);
  static ConfigMap parse_text(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const;
  // typed accessors; throw with the offending key named
  double get_double(const std::string& key, double fallback);
  int get_int(const std::string& key, int fallback);
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback);
  bool get_bool(const std::string& key, bool fallback);
  std::string get_string(const std::string& key, const std::string& fallback);
  std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback);

  void set(const std::string& key, const std::string& value);
  // throws listing any key that was never consumed by an accessor
  void ensure_all_consumed() const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
  std::set<std::string> consumed_;
  std::string origin_;
};

enum class Algorithm { kHgail, kGailDemo, kPpoSparse, kGasil, kHgailNo };

std::string to_string(Algorithm a);
Algorithm algorithm_from_string(const std::string& s);
std::string to_string(Task t);
std::string to_string(HindsightStrategy s);
std::string to_string(RewardKind k);
std::string to_string(ScoreSemantics s);

struct TrainConfig {
  EnvConfig env;
  Algorithm algorithm = Algorithm::kHgail;
  std::uint64_t seed = 1;
  int iterations = 500;
  int episodes_per_batch = 16;
  int g_steps = 16;
  int d_steps = 3;
  int pretrain_gen_steps = 100;
  int pretrain_disc_steps = 500;
  double pretrain_gen_lr = 0.001;
  HindsightConfig hindsight;
  PpoConfig ppo;
  double policy_cov = 1.0;
  bool learnable_std = false;
  RewardFormation reward;
  double disc_learning_rate = 0.0004;
  int disc_batch = 64;
  int gasil_capacity = 16;
  int demo_episodes = 16;
  int eval_episodes = 50;
  int checkpoint_interval = 0;  // 0: final checkpoint only
  bool early_stop = false;
  double early_stop_threshold = 0.95;
  int early_stop_window = 20;
};

void validate(const TrainConfig& config);

// reads the full schema and then rejects unconsumed keys
TrainConfig load_train_config(ConfigMap& map);
TrainConfig load_train_config_file(const std::filesystem::path& path);

// effective config as schema-ordered `key = value` text; parsing it back
// reproduces the config
std::string serialize_config(const TrainConfig& config);

// overrides of the form "key=value"; keys must exist in the schema
void apply_overrides(ConfigMap& map, const std::vector<std::string>& overrides);

const std::vector<std::string>& config_schema_keys();

}  // namespace hgail
