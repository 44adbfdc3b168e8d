#include "mcssa/calibration.hpp"

#include <boost/math/distributions/beta.hpp>
#include <cmath>
#include <numeric>
#include <string>

#include "mcssa/parallel.hpp"
#include "mcssa/rng.hpp"
#include "mcssa/series_model.hpp"

namespace mcssa {

Interval clopper_pearson(int successes, int trials, double level) {
  if (trials < 1) throw ParameterError("at least 1 trial is required");
  if (successes < 0 || successes > trials)
    throw ParameterError("success count must lie in [0, trials]");
  if (!(level > 0.0 && level < 1.0))
    throw ParameterError("confidence level must lie in (0, 1)");

  const double tail = 0.5 * (1.0 - level);
  Interval interval;
  try {
    interval.lower =
        successes == 0
            ? 0.0
            : boost::math::quantile(
                  boost::math::beta_distribution<double>(
                      successes, trials - successes + 1),
                  tail);
    interval.upper =
        successes == trials
            ? 1.0
            : boost::math::quantile(
                  boost::math::beta_distribution<double>(
                      successes + 1, trials - successes),
                  1.0 - tail);
  } catch (const std::exception& e) {
    throw ComputationError(std::string("beta quantile failed: ") + e.what());
  }
  return interval;
}

ErrorEstimate estimate_rejection_rate(const Scenario& scenario,
                                      std::uint64_t seed, int workers) {
  scenario.validate();
  const int m = scenario.replicates;
  std::vector<unsigned char> rejected(static_cast<std::size_t>(m), 0);

  parallel_for(static_cast<std::size_t>(m), workers, [&](std::size_t r) {
    const std::uint64_t replicate_seed = derive_seed(seed, r);
    RngEngine engine = make_engine(derive_seed(replicate_seed, 0));
    const TimeSeries series =
        synthesize(scenario.signal, scenario.model.n, scenario.model, engine);
    const TestResult result =
        run_mcssa(series, scenario.config, derive_seed(replicate_seed, 1), 1);
    rejected[r] = result.reject ? 1 : 0;
  });

  ErrorEstimate estimate;
  estimate.rejections =
      std::accumulate(rejected.begin(), rejected.end(), 0);
  estimate.replicates = m;
  estimate.proportion =
      static_cast<double>(estimate.rejections) / static_cast<double>(m);
  const Interval ci = clopper_pearson(estimate.rejections, m);
  estimate.ci_low = ci.lower;
  estimate.ci_high = ci.upper;
  return estimate;
}

namespace {

ErrorEstimate evaluate_level(const Scenario& scenario, double alpha,
                             std::uint64_t seed, int workers) {
  Scenario candidate = scenario;
  candidate.config.confidence = 1.0 - alpha;
  return estimate_rejection_rate(candidate, seed, workers);
}

bool ci_contains(const ErrorEstimate& estimate, double target) {
  return estimate.ci_low <= target && target <= estimate.ci_high;
}

}  // namespace

AlphaAdjustment adjust_alpha(const Scenario& scenario, double target,
                             const AlphaSearch& search, std::uint64_t seed,
                             int workers) {
  scenario.validate();
  search.validate();
  if (scenario.signal.amplitude != 0.0)
    throw ParameterError("type-I calibration requires a signal-free scenario");
  if (!(target > 0.0 && target < 1.0))
    throw ParameterError("target error rate must lie in (0, 1)");

  AlphaAdjustment result;
  result.target = target;

  const auto evaluate = [&](double alpha) {
    result.trace.emplace_back(alpha,
                              evaluate_level(scenario, alpha, seed, workers));
    return result.trace.back().second;
  };

  double lo = search.lower;
  double hi = search.upper;
  const ErrorEstimate at_lo = evaluate(lo);
  const ErrorEstimate at_hi = evaluate(hi);

  // Point estimates decide whether the target is attainable at all;
  // interval overlap at an endpoint must not mask an unreachable target.
  if (at_lo.proportion > target || at_hi.proportion < target)
    throw SearchError(
        "empirical type-I error does not bracket the target on the search "
        "interval");
  if (ci_contains(at_lo, target)) {
    result.adjusted = lo;
    return result;
  }
  if (ci_contains(at_hi, target)) {
    result.adjusted = hi;
    return result;
  }

  for (int iteration = 0; iteration < search.max_iterations; ++iteration) {
    if (hi - lo < search.tolerance)
      throw SearchError(
          "search bracket collapsed before reaching the target error rate");
    const double mid = 0.5 * (lo + hi);
    const ErrorEstimate at_mid = evaluate(mid);
    if (ci_contains(at_mid, target)) {
      result.adjusted = mid;
      return result;
    }
    if (at_mid.proportion < target)
      lo = mid;
    else
      hi = mid;
  }
  throw SearchError("iteration budget exhausted before the target error rate");
}

std::vector<RocPoint> roc_sweep(const Scenario& null_scenario,
                                const Scenario& signal_scenario,
                                const std::vector<double>& levels,
                                std::uint64_t seed, int workers) {
  null_scenario.validate();
  signal_scenario.validate();
  if (null_scenario.signal.amplitude != 0.0)
    throw ParameterError("the null scenario must be signal-free");
  if (!(signal_scenario.signal.amplitude > 0.0))
    throw ParameterError("the alternative scenario must carry a signal");
  if (levels.empty()) throw ParameterError("at least one level is required");
  for (double alpha : levels)
    if (!(alpha > 0.0 && alpha < 1.0))
      throw ParameterError("levels must lie in (0, 1)");

  const std::uint64_t null_seed = derive_seed(seed, 0);
  const std::uint64_t signal_seed = derive_seed(seed, 1);

  std::vector<RocPoint> points;
  points.reserve(levels.size());
  for (double alpha : levels) {
    RocPoint point;
    point.alpha = alpha;
    point.fpr = evaluate_level(null_scenario, alpha, null_seed, workers);
    point.tpr = evaluate_level(signal_scenario, alpha, signal_seed, workers);
    points.push_back(point);
  }
  return points;
}

}  // namespace mcssa
