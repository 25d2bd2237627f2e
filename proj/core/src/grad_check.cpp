#include "transgnn/grad_check.hpp"

#include <cmath>

#include "transgnn/errors.hpp"
#include "transgnn/rng.hpp"

namespace transgnn {

GradCheckReport grad_check(const std::function<double()>& loss, ParameterStore& store,
                           const GradientSet& analytic, int probe_count, double epsilon,
                           std::uint64_t seed) {
  if (analytic.count() != store.count()) throw ShapeError("grad_check: gradient count mismatch");
  std::size_t total_coords = 0;
  for (std::size_t p = 0; p < store.count(); ++p) total_coords += store.value(p).size();
  if (total_coords == 0) return {};

  Rng rng(seed);
  GradCheckReport report;
  for (int probe = 0; probe < probe_count; ++probe) {
    std::uint64_t flat = rng.next_below(total_coords);
    std::size_t p = 0;
    while (flat >= store.value(p).size()) {
      flat -= store.value(p).size();
      ++p;
    }
    double& coord = store.value(p).data()[flat];
    const double saved = coord;

    coord = saved + epsilon;
    const double up = loss();
    coord = saved - epsilon;
    const double down = loss();
    coord = saved;

    if (!std::isfinite(up) || !std::isfinite(down)) {
      throw NumericError("grad_check: non-finite loss at probe");
    }
    const double fd = (up - down) / (2.0 * epsilon);
    const double an = analytic[p].data()[flat];
    const double rel = std::fabs(an - fd) / std::max(1e-8, std::fabs(an) + std::fabs(fd));
    report.max_rel_error = std::max(report.max_rel_error, rel);
    ++report.probes;
  }
  return report;
}

}  // namespace transgnn
