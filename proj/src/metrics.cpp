#include "hgail/metrics.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hgail {

double distance_error(const Eigen::Vector3d& final_position, const Eigen::Vector3d& target) {
  if (!final_position.allFinite() || !target.allFinite())
    throw std::invalid_argument("distance_error: non-finite input");
  return (final_position - target).cwiseAbs().sum();
}

double success_rate(const std::vector<double>& final_distances, double delta) {
  if (final_distances.empty()) throw std::invalid_argument("success_rate: empty outcome list");
  if (!(delta > 0.0)) throw std::invalid_argument("success_rate: delta must be positive");
  std::size_t hits = 0;
  for (double d : final_distances)
    if (d <= delta) ++hits;
  return static_cast<double>(hits) / static_cast<double>(final_distances.size());
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_curve(const std::vector<MetricsRecord>& records,
                 const std::filesystem::path& destination) {
  std::ofstream out(destination, std::ios::trunc);
  if (!out) throw std::runtime_error("write_curve: cannot open " + destination.string());
  out << kCurveHeader << '\n';
  for (const auto& r : records) {
    out << r.iteration << ',' << format_double(r.success_rate) << ','
        << format_double(r.distance_error_mean) << ',' << format_double(r.distance_error_std)
        << ',' << format_double(r.disc_loss) << ',' << format_double(r.policy_surrogate) << ','
        << format_double(r.clip_fraction) << ',' << format_double(r.entropy) << '\n';
  }
  if (!out) throw std::runtime_error("write_curve: write failed for " + destination.string());
}

std::vector<MetricsRecord> read_curve(const std::filesystem::path& source) {
  std::ifstream in(source);
  if (!in) throw std::runtime_error("read_curve: cannot open " + source.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("read_curve: empty file " + source.string());
  if (line != kCurveHeader)
    throw std::runtime_error("read_curve: unexpected header in " + source.string());
  std::vector<MetricsRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 8)
      throw std::runtime_error("read_curve: malformed row in " + source.string());
    MetricsRecord r;
    r.iteration = std::stoi(fields[0]);
    r.success_rate = std::stod(fields[1]);
    r.distance_error_mean = std::stod(fields[2]);
    r.distance_error_std = std::stod(fields[3]);
    r.disc_loss = std::stod(fields[4]);
    r.policy_surrogate = std::stod(fields[5]);
    r.clip_fraction = std::stod(fields[6]);
    r.entropy = std::stod(fields[7]);
    records.push_back(r);
  }
  return records;
}

}  // namespace hgail
