#pragma once

#include <algorithm>
#include <cmath>

namespace hgail {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// log(sigmoid(x)) without catastrophic cancellation for large |x|
inline double log_sigmoid(double x) {
  return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

inline double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

inline constexpr double kTwoPi = 6.28318530717958647692;

}  // namespace hgail
