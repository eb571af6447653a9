#include "hgail/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <thread>

#include "hgail/checkpoint.hpp"
#include "hgail/experiment.hpp"
#include "hgail/trainer.hpp"

namespace hgail {

namespace {

std::filesystem::path output_root(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("HGAIL_OUT_ROOT"); env && *env) return env;
  return "runs";
}

TrainConfig resolve_config(const std::string& config_path, long seed, int iterations,
                           const std::string& algorithm, const std::vector<std::string>& sets) {
  ConfigMap map = ConfigMap::parse_file(config_path);
  apply_overrides(map, sets);
  if (seed >= 0) map.set("seed", std::to_string(seed));
  if (iterations >= 0) map.set("iterations", std::to_string(iterations));
  if (!algorithm.empty()) map.set("algorithm", algorithm);
  return load_train_config(map);
}

// Wilson score interval at 95%
std::pair<double, double> binomial_interval(double p, int n) {
  const double z = 1.959963984540054;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

int cmd_eval(const std::string& checkpoint_path, const std::string& config_path, int episodes,
             long seed) {
  if (episodes <= 0) throw std::runtime_error("eval: episodes must be positive");
  const TrainConfig config = load_train_config_file(config_path);
  Rng rng(seed >= 0 ? static_cast<std::uint64_t>(seed) : 0u);

  EvalStats stats;
  if (is_expert_checkpoint(checkpoint_path)) {
    stats = evaluate_scripted_expert(config.env, episodes, rng);
  } else {
    const GaussianPolicy policy = load_policy(checkpoint_path);
    const int expected = observation_dim(config.env.task) + 3;
    if (policy.mean_net.input_dim() != expected)
      throw std::runtime_error("eval: checkpoint input dim " +
                               std::to_string(policy.mean_net.input_dim()) +
                               " does not match task (expected " + std::to_string(expected) + ")");
    stats = evaluate_policy(policy, config.env, episodes, rng);
  }

  const auto [lo, hi] = binomial_interval(stats.success_rate, episodes);
  std::cout << "episodes         " << episodes << "\n"
            << "success_rate     " << stats.success_rate << "  (95% CI " << lo << " .. " << hi
            << ")\n"
            << "distance_error   " << stats.distance_mean << " +- " << stats.distance_std
            << " m (L1)\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"hindsight adversarial imitation learning for goal-conditioned control"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_flag;
  std::string algorithm;
  std::string suite;
  std::string checkpoint_path;
  std::string report_dir;
  long seed = -1;
  int iterations = -1;
  int episodes = 100;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::vector<long> seeds = {1, 2, 3, 4, 5};
  std::vector<std::string> sets;

  auto* train = app.add_subcommand("train", "run one training configuration");
  train->add_option("--config", config_path, "config file")->required();
  train->add_option("--seed", seed, "override the config seed");
  train->add_option("--iterations", iterations, "override the iteration count");
  train->add_option("--algorithm", algorithm, "override the algorithm");
  train->add_option("--out", out_flag, "run directory (default $HGAIL_OUT_ROOT or ./runs)");
  train->add_option("--set", sets, "extra key=value overrides");

  auto* ablate = app.add_subcommand("ablate", "run an ablation suite across seeds");
  ablate->add_option("--suite", suite, "curriculum|strategy|pht|reward|baselines")->required();
  ablate->add_option("--config", config_path, "base config file")->required();
  ablate->add_option("--seeds", seeds, "seeds to run")->delimiter(',');
  ablate->add_option("--iterations", iterations, "override the iteration count");
  ablate->add_option("--out", out_flag, "suite output root");
  ablate->add_option("--jobs", jobs, "parallel runs");
  ablate->add_option("--set", sets, "extra key=value overrides");

  auto* eval = app.add_subcommand("eval", "evaluate a saved policy checkpoint");
  eval->add_option("--checkpoint", checkpoint_path, "policy checkpoint")->required();
  eval->add_option("--config", config_path, "config file (task definition)")->required();
  eval->add_option("--episodes", episodes, "evaluation episodes");
  eval->add_option("--seed", seed, "evaluation seed");

  auto* report = app.add_subcommand("report", "re-aggregate per-run curves in a directory");
  report->add_option("--dir", report_dir, "directory holding <variant>_seed<k> runs")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (train->parsed()) {
      const TrainConfig config = resolve_config(config_path, seed, iterations, algorithm, sets);
      RunRequest req;
      req.name = "train";
      req.config = config;
      req.out_dir = output_root(out_flag);
      const auto curve = execute_run(req, true);
      std::cout << "final success_rate " << curve.back().success_rate << "  distance "
                << curve.back().distance_error_mean << "\nrun directory: " << req.out_dir.string()
                << std::endl;
      return 0;
    }
    if (ablate->parsed()) {
      const TrainConfig base = resolve_config(config_path, -1, iterations, "", sets);
      std::vector<std::uint64_t> seed_list(seeds.begin(), seeds.end());
      const ExperimentSpec spec = make_suite(suite, base, seed_list, output_root(out_flag));
      const auto rows = run_suite(spec, jobs, true);
      std::cout << format_report(rows);
      std::cout << "report: " << (spec.out_root / "report.csv").string() << std::endl;
      return 0;
    }
    if (eval->parsed()) return cmd_eval(checkpoint_path, config_path, episodes, seed);
    if (report->parsed()) {
      const auto rows = aggregate_runs(report_dir);
      write_report(rows, std::filesystem::path(report_dir) / "report.csv");
      std::cout << format_report(rows);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 1;
}

}  // namespace hgail
