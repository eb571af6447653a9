#pragma once

#include <functional>

#include "hgail/mlp.hpp"

namespace hgail {

struct GradCheckReport {
  double max_rel_error = 0.0;
  long worst_index = -1;
  long checked = 0;
  double tolerance = 0.0;
  bool pass = false;
};

// Central finite differences of `loss` against an analytic gradient,
// parameter by parameter. The error at index i is
//   |fd - analytic| / max(|fd|, |analytic|, 1e-4)
// so that entries with near-zero gradient are compared on an absolute scale
// instead of amplifying finite-difference noise. Throws if the loss is not
// finite at any probe point.
GradCheckReport grad_check(const MlpParams& params,
                           const std::function<double(const MlpParams&)>& loss,
                           const Gradient& analytic, double tolerance, double step = 1e-5);

}  // namespace hgail
