#ifndef MCSSA_QUANTILE_HPP
#define MCSSA_QUANTILE_HPP

#include <span>
#include <vector>

namespace mcssa {

// Empirical quantile with linear interpolation between order statistics,
// plotting position (i-1)/(n-1) (the convention used throughout: the sample
// minimum is the 0-quantile, the maximum the 1-quantile). `sorted` must be
// ascending; p must lie in [0, 1].
double quantile_sorted(std::span<const double> sorted, double p);

// Convenience wrapper that copies and sorts.
double empirical_quantile(std::vector<double> values, double p);

}  // namespace mcssa

#endif
