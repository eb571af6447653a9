#include "hgail/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hgail/hash.hpp"

namespace hgail {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::vector<MetricsRecord> execute_run(const RunRequest& request, bool verbose) {
  std::filesystem::create_directories(request.out_dir);
  const std::string resolved = serialize_config(request.config);
  write_text(request.out_dir / "config.cfg", resolved);
  write_text(request.out_dir / "config_hash.txt", git_blob_hash(resolved) + "\n");
  write_text(request.out_dir / "seed.txt", std::to_string(request.config.seed) + "\n");
  const RunResult result = run(request.config, &request.out_dir, verbose);
  return result.curve;
}

ExperimentSpec make_suite(const std::string& suite, const TrainConfig& base,
                          const std::vector<std::uint64_t>& seeds,
                          const std::filesystem::path& out_root) {
  if (seeds.empty()) throw std::invalid_argument("suite: seeds must be non-empty");
  for (std::size_t i = 0; i < seeds.size(); ++i)
    for (std::size_t j = i + 1; j < seeds.size(); ++j)
      if (seeds[i] == seeds[j]) throw std::invalid_argument("suite: seeds must be distinct");

  ExperimentSpec spec;
  spec.name = suite;
  spec.base = base;
  spec.seeds = seeds;
  spec.out_root = out_root;
  if (suite == "curriculum") {
    spec.variants = {{"curriculum_on", {"curriculum=true"}}, {"curriculum_off", {"curriculum=false"}}};
  } else if (suite == "strategy") {
    spec.variants = {{"future", {"strategy=future"}}, {"final", {"strategy=final"}}};
  } else if (suite == "pht") {
    for (const char* p : {"0.2", "0.4", "0.6", "0.8", "1.0"})
      spec.variants.push_back({std::string("pht_") + p, {std::string("p_ht=") + p}});
  } else if (suite == "reward") {
    for (const char* r : {"r1", "r2", "r3", "r4"})
      spec.variants.push_back({r, {std::string("reward_formation=") + r}});
  } else if (suite == "baselines") {
    for (const char* a : {"hgail", "gail_demo", "ppo_sparse", "gasil", "hgail_no"})
      spec.variants.push_back({a, {std::string("algorithm=") + a}});
  } else {
    throw std::invalid_argument(
        "suite must be one of curriculum|strategy|pht|reward|baselines, got " + suite);
  }
  return spec;
}

namespace {

TrainConfig configure_variant(const TrainConfig& base, const std::vector<std::string>& overrides,
                              std::uint64_t seed) {
  ConfigMap map = ConfigMap::parse_text(serialize_config(base), "<base config>");
  apply_overrides(map, overrides);
  map.set("seed", std::to_string(seed));
  return load_train_config(map);
}

}  // namespace

std::vector<AggregateRow> run_suite(const ExperimentSpec& spec, int jobs, bool verbose) {
  std::vector<RunRequest> requests;
  for (const auto& [variant, overrides] : spec.variants) {
    for (const std::uint64_t seed : spec.seeds) {
      RunRequest req;
      req.name = variant + "_seed" + std::to_string(seed);
      req.config = configure_variant(spec.base, overrides, seed);
      req.out_dir = spec.out_root / req.name;
      requests.push_back(std::move(req));
    }
  }

  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(requests.size())));
  std::atomic<std::size_t> cursor{0};
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex error_mutex;
  auto work = [&] {
    while (true) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= requests.size() || failed.load()) return;
      try {
        if (verbose) std::cout << "[run] " << requests[i].name << std::endl;
        execute_run(requests[i]);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) first_error = requests[i].name + ": " + e.what();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failed.load()) throw std::runtime_error("suite run failed: " + first_error);

  const std::vector<AggregateRow> rows = aggregate_runs(spec.out_root);
  write_report(rows, spec.out_root / "report.csv");
  return rows;
}

std::vector<AggregateRow> aggregate_runs(const std::filesystem::path& root) {
  // group run directories <variant>_seed<k> by variant
  std::map<std::string, std::vector<std::filesystem::path>> groups;
  for (const auto& entry : std::filesystem::directory_iterator(root)) {
    if (!entry.is_directory()) continue;
    const std::string name = entry.path().filename().string();
    const auto pos = name.rfind("_seed");
    if (pos == std::string::npos) continue;
    if (!std::filesystem::exists(entry.path() / "curve.csv")) continue;
    groups[name.substr(0, pos)].push_back(entry.path());
  }
  if (groups.empty()) throw std::runtime_error("aggregate: no run directories under " + root.string());

  std::vector<AggregateRow> rows;
  for (auto& [variant, dirs] : groups) {
    std::sort(dirs.begin(), dirs.end());
    AggregateRow row;
    row.variant = variant;
    std::vector<double> success, distance;
    for (const auto& dir : dirs) {
      const auto curve = read_curve(dir / "curve.csv");
      if (curve.empty()) throw std::runtime_error("aggregate: empty curve in " + dir.string());
      success.push_back(curve.back().success_rate);
      distance.push_back(curve.back().distance_error_mean);
    }
    row.runs = static_cast<int>(success.size());
    auto mean_of = [](const std::vector<double>& v) {
      double m = 0.0;
      for (double x : v) m += x;
      return m / static_cast<double>(v.size());
    };
    auto sample_std = [&](const std::vector<double>& v, double m) {
      if (v.size() < 2) return 0.0;
      double acc = 0.0;
      for (double x : v) acc += (x - m) * (x - m);
      return std::sqrt(acc / static_cast<double>(v.size() - 1));
    };
    row.success_mean = mean_of(success);
    row.success_std = sample_std(success, row.success_mean);
    row.distance_mean = mean_of(distance);
    row.distance_std = sample_std(distance, row.distance_mean);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_report(const std::vector<AggregateRow>& rows, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "variant,runs,success_mean,success_std,distance_mean,distance_std\n";
  for (const auto& r : rows) {
    out << r.variant << ',' << r.runs << ',' << format_double(r.success_mean) << ','
        << format_double(r.success_std) << ',' << format_double(r.distance_mean) << ','
        << format_double(r.distance_std) << '\n';
  }
  write_text(path, out.str());
}

std::string format_report(const std::vector<AggregateRow>& rows) {
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-16s %5s  %-15s %-15s\n", "variant", "runs", "success", "distance");
  out << buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%-16s %5d  %.3f +- %.3f  %.3f +- %.3f\n", r.variant.c_str(),
                  r.runs, r.success_mean, r.success_std, r.distance_mean, r.distance_std);
    out << buf;
  }
  return out.str();
}

}  // namespace hgail
