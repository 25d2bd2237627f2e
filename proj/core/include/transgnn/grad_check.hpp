#pragma once

#include <cstdint>
#include <functional>

#include "transgnn/param_store.hpp"

namespace transgnn {

struct GradCheckReport {
  double max_rel_error = 0.0;
  int probes = 0;
};

// Compares the supplied analytic gradient against central finite differences
// at probe_count randomly chosen parameter coordinates. `loss` must be a
// deterministic scalar function of the store contents; the store is restored
// after each probe. Relative error per probe:
//   |g_analytic - g_fd| / max(1e-8, |g_analytic| + |g_fd|)
GradCheckReport grad_check(const std::function<double()>& loss, ParameterStore& store,
                           const GradientSet& analytic, int probe_count, double epsilon,
                           std::uint64_t seed);

}  // namespace transgnn
