#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

namespace hgail {

struct MetricsRecord {
  int iteration = 0;
  double success_rate = 0.0;
  double distance_error_mean = 0.0;
  double distance_error_std = 0.0;
  double disc_loss = 0.0;
  double policy_surrogate = 0.0;
  double clip_fraction = 0.0;
  double entropy = 0.0;
  // Measured elapsed seconds. Telemetry only: it is not written to the curve
  // file so that identical seeds produce byte-identical curves.
  double wall_time = 0.0;
};

// L1 distance between the final gripper (or object) position and the target
double distance_error(const Eigen::Vector3d& final_position, const Eigen::Vector3d& target);

// fraction of final distances within the allowed error; the boundary d == delta
// counts as a success
double success_rate(const std::vector<double>& final_distances, double delta);

// header row plus one row per record, full-precision floats, fixed column
// order; overwrites the destination
inline constexpr const char* kCurveHeader =
    "iteration,success_rate,distance_error_mean,distance_error_std,disc_loss,"
    "policy_surrogate,clip_fraction,entropy";

void write_curve(const std::vector<MetricsRecord>& records, const std::filesystem::path& destination);

std::vector<MetricsRecord> read_curve(const std::filesystem::path& source);

std::string format_double(double v);  // round-trip exact decimal form

}  // namespace hgail
