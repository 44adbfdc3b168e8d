#include "mcssa/quantile.hpp"

#include <algorithm>
#include <cmath>

#include "mcssa/errors.hpp"

namespace mcssa {

double quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw ParameterError("quantile of an empty sample");
  if (!(p >= 0.0 && p <= 1.0))
    throw ParameterError("quantile level must lie in [0, 1]");
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = static_cast<double>(n - 1) * p;
  const double fl = std::floor(h);
  std::size_t i = static_cast<std::size_t>(fl);
  if (i >= n - 1) return sorted[n - 1];
  const double g = h - fl;
  return sorted[i] + g * (sorted[i + 1] - sorted[i]);
}

double empirical_quantile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  return quantile_sorted(values, p);
}

}  // namespace mcssa
