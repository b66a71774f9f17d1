#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "styleeq/nn/parameter_store.h"

namespace styleeq::nn {

struct GradCheckReport {
  double max_rel_error = 0.0;
  std::string worst_param;
  Eigen::Index worst_index = -1;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  std::size_t checked = 0;
};

// |a - n| / max(|a|, |n|, floor). The floor keeps entries whose true
// gradient is ~0 from dominating through round-off.
inline double relative_error(double analytic, double numeric, double floor = 1e-6) {
  const double denom = std::max({std::abs(analytic), std::abs(numeric), floor});
  return std::abs(analytic - numeric) / denom;
}

// Compares `analytic` (same layout as store.grads()) with central
// differences of `loss`, which must read the store's current values.
// max_per_param > 0 checks that many entries per parameter, chosen with a
// seeded generator; 0 checks every entry.
template <typename F>
GradCheckReport grad_check(ParameterStore<double>& store, const GradientSet<double>& analytic,
                           F&& loss, double eps = 1e-5, std::size_t max_per_param = 0,
                           std::uint64_t seed = 7, double floor = 1e-6) {
  GradCheckReport report;
  Rng rng(seed);
  for (int id = 0; id < store.size(); ++id) {
    Matrix<double>& v = store.value(id);
    const Eigen::Index total = v.size();
    const std::size_t count =
        max_per_param == 0 ? static_cast<std::size_t>(total)
                           : std::min<std::size_t>(max_per_param, static_cast<std::size_t>(total));
    for (std::size_t c = 0; c < count; ++c) {
      const Eigen::Index k =
          max_per_param == 0 ? static_cast<Eigen::Index>(c)
                             : static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(total));
      const double saved = v.data()[k];
      v.data()[k] = saved + eps;
      const double plus = loss();
      v.data()[k] = saved - eps;
      const double minus = loss();
      v.data()[k] = saved;
      const double numeric = (plus - minus) / (2.0 * eps);
      const double a = analytic[id].data()[k];
      const double err = relative_error(a, numeric, floor);
      ++report.checked;
      if (err > report.max_rel_error || report.worst_index < 0) {
        report.max_rel_error = err;
        report.worst_param = store.name(id);
        report.worst_index = k;
        report.worst_analytic = a;
        report.worst_numeric = numeric;
      }
    }
  }
  return report;
}

}  // namespace styleeq::nn
