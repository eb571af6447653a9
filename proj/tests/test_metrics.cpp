#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "hgail/metrics.hpp"
#include "hgail/rng.hpp"

using namespace hgail;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "hgail_metrics_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

int count_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  int n = 0;
  std::string line;
  while (std::getline(in, line)) ++n;
  return n;
}

}  // namespace

TEST_CASE("distance error is the L1 norm") {
  CHECK(distance_error({0, 0, 0}, {0, 0, 0}) == 0.0);
  CHECK(distance_error({1, 2, 3}, {0, 0, 0}) == 6.0);
  CHECK(distance_error({0.5, -0.5, 0.25}, {0, 0, 0}) == doctest::Approx(1.25));
}

TEST_CASE("distance error matches an elementwise absolute-sum oracle and is a metric") {
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    Eigen::Vector3d a, b, c;
    for (int k = 0; k < 3; ++k) {
      a(k) = rng.uniform(-5, 5);
      b(k) = rng.uniform(-5, 5);
      c(k) = rng.uniform(-5, 5);
    }
    double oracle = 0.0;
    for (int k = 0; k < 3; ++k) oracle += std::abs(a(k) - b(k));
    CHECK(distance_error(a, b) == doctest::Approx(oracle).epsilon(1e-14));
    CHECK(distance_error(a, b) == doctest::Approx(distance_error(b, a)).epsilon(1e-14));
    CHECK(distance_error(a, c) <= distance_error(a, b) + distance_error(b, c) + 1e-12);
  }
}

TEST_CASE("success rate counts hits within delta, boundary inclusive") {
  CHECK(success_rate({0.0, 0.0, 0.0}, 0.05) == 1.0);
  CHECK(success_rate({0.01, 0.2}, 0.05) == 0.5);
  CHECK(success_rate({0.05}, 0.05) == 1.0);  // d == delta counts
  CHECK(success_rate({0.050000001}, 0.05) == 0.0);
  CHECK_THROWS_AS(success_rate({}, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(success_rate({0.1}, 0.0), std::invalid_argument);
}

TEST_CASE("success rate is a rational with denominator N") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + rng.uniform_int(0, 30);
    std::vector<double> d;
    for (int i = 0; i < n; ++i) d.push_back(rng.uniform(0, 0.1));
    const double s = success_rate(d, 0.05);
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
    const double scaled = s * n;
    CHECK(std::abs(scaled - std::round(scaled)) < 1e-12);
  }
}

TEST_CASE("write_curve with no records emits a header-only file") {
  const auto path = temp_file("empty.csv");
  write_curve({}, path);
  CHECK(count_lines(path) == 1);
  CHECK(read_curve(path).empty());
}

TEST_CASE("write_curve emits one row per record") {
  std::vector<MetricsRecord> records(500);
  for (int i = 0; i < 500; ++i) records[i].iteration = i;
  const auto path = temp_file("many.csv");
  write_curve(records, path);
  CHECK(count_lines(path) == 501);
}

TEST_CASE("curve round-trips bit-exactly through the file") {
  Rng rng(7);
  std::vector<MetricsRecord> records;
  for (int i = 0; i < 40; ++i) {
    MetricsRecord r;
    r.iteration = i;
    r.success_rate = rng.uniform(0, 1);
    r.distance_error_mean = rng.uniform(0, 2) * std::exp(rng.uniform(-20, 3));
    r.distance_error_std = rng.uniform(0, 1);
    r.disc_loss = rng.normal() * 1e-7;
    r.policy_surrogate = rng.normal();
    r.clip_fraction = rng.uniform(0, 1);
    r.entropy = rng.normal() * 100;
    records.push_back(r);
  }
  const auto path = temp_file("roundtrip.csv");
  write_curve(records, path);
  const auto got = read_curve(path);
  REQUIRE(got.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(got[i].iteration == records[i].iteration);
    CHECK(got[i].success_rate == records[i].success_rate);
    CHECK(got[i].distance_error_mean == records[i].distance_error_mean);
    CHECK(got[i].distance_error_std == records[i].distance_error_std);
    CHECK(got[i].disc_loss == records[i].disc_loss);
    CHECK(got[i].policy_surrogate == records[i].policy_surrogate);
    CHECK(got[i].clip_fraction == records[i].clip_fraction);
    CHECK(got[i].entropy == records[i].entropy);
  }
}

TEST_CASE("write_curve overwrite is idempotent") {
  std::vector<MetricsRecord> records(3);
  const auto path = temp_file("overwrite.csv");
  write_curve(records, path);
  write_curve(records, path);
  CHECK(count_lines(path) == 4);
}

TEST_CASE("unwritable destination fails with context") {
  CHECK_THROWS_WITH_AS(write_curve({}, "/nonexistent-dir/x/curve.csv"),
                       doctest::Contains("curve.csv"), std::runtime_error);
}
