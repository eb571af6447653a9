#include "hgail/grad_check.hpp"

#include <cmath>
#include <stdexcept>

namespace hgail {

GradCheckReport grad_check(const MlpParams& params,
                           const std::function<double(const MlpParams&)>& loss,
                           const Gradient& analytic, double tolerance, double step) {
  MlpParams probe = params;
  auto probe_view = parameter_view(probe);
  auto grad_view = parameter_view(analytic);
  if (probe_view.size() != grad_view.size())
    throw std::invalid_argument("grad_check: gradient shape does not match parameters");

  GradCheckReport report;
  report.tolerance = tolerance;
  for (std::size_t i = 0; i < probe_view.size(); ++i) {
    const double saved = *probe_view[i];
    *probe_view[i] = saved + step;
    const double up = loss(probe);
    *probe_view[i] = saved - step;
    const double down = loss(probe);
    *probe_view[i] = saved;
    if (!std::isfinite(up) || !std::isfinite(down))
      throw std::runtime_error("grad_check: loss not finite at probe point");
    const double fd = (up - down) / (2.0 * step);
    const double an = *grad_view[i];
    const double rel = std::abs(fd - an) / std::max({std::abs(fd), std::abs(an), 1e-4});
    if (rel > report.max_rel_error) {
      report.max_rel_error = rel;
      report.worst_index = static_cast<long>(i);
    }
    ++report.checked;
  }
  report.pass = report.max_rel_error < tolerance;
  return report;
}

}  // namespace hgail
