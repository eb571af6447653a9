#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "hgail/config.hpp"
#include "hgail/metrics.hpp"
#include "hgail/trainer.hpp"

namespace hgail {

// One configured run with its output directory. The directory receives the
// resolved config, the seed, a git-style content hash of the resolved config,
// the curve CSV, and the final checkpoints; that set reproduces the run.
struct RunRequest {
  std::string name;
  TrainConfig config;
  std::filesystem::path out_dir;
};

// executes the run and writes every provenance file; returns the curve
std::vector<MetricsRecord> execute_run(const RunRequest& request, bool verbose = false);

struct ExperimentSpec {
  std::string name;
  TrainConfig base;
  std::vector<std::pair<std::string, std::vector<std::string>>> variants;  // name -> overrides
  std::vector<std::uint64_t> seeds;
  std::filesystem::path out_root;
};

// named ablation suites over key=value overrides of the base config
ExperimentSpec make_suite(const std::string& suite, const TrainConfig& base,
                          const std::vector<std::uint64_t>& seeds,
                          const std::filesystem::path& out_root);

// runs the cartesian product variants x seeds, up to `jobs` in parallel,
// then aggregates; returns the aggregate rows in variant order
struct AggregateRow {
  std::string variant;
  int runs = 0;
  double success_mean = 0.0;
  double success_std = 0.0;
  double distance_mean = 0.0;
  double distance_std = 0.0;
};

std::vector<AggregateRow> run_suite(const ExperimentSpec& spec, int jobs, bool verbose = false);

// recomputes the aggregate from the per-run curve CSVs under `root`
// (subdirectories named <variant>_seed<k>); identical to what run_suite wrote
std::vector<AggregateRow> aggregate_runs(const std::filesystem::path& root);

void write_report(const std::vector<AggregateRow>& rows, const std::filesystem::path& path);
std::string format_report(const std::vector<AggregateRow>& rows);

}  // namespace hgail
