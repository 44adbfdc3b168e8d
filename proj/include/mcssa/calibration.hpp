#ifndef MCSSA_CALIBRATION_HPP
#define MCSSA_CALIBRATION_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "mcssa/detection.hpp"

namespace mcssa {

// A simulation scenario: the true data-generating process (noise model plus
// optional sinusoid) and the test configuration applied to each replicate.
// With signal.amplitude == 0 the rejection rate estimates the type-I error;
// otherwise the power.
struct Scenario {
  Ar1Model model;
  SignalSpec signal;
  TestConfig config;
  int replicates = 0;

  void validate() const {
    model.validate();
    signal.validate();
    config.validate();
    if (replicates < 1) throw ParameterError("at least 1 replicate is required");
    if (config.model && config.model->n != model.n)
      throw ParameterError("null model length disagrees with the scenario");
    if (config.window >= model.n)
      throw ParameterError("window length must be smaller than the series");
  }
};

struct ErrorEstimate {
  int rejections = 0;
  int replicates = 0;
  double proportion = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

// Exact (Clopper-Pearson) binomial confidence interval for k successes in
// m trials.
Interval clopper_pearson(int successes, int trials, double level = 0.95);

// Monte Carlo rejection rate of the configured test over
// scenario.replicates independent replicates, with a Clopper-Pearson 95%
// interval. Replicate r draws its series and its surrogate seed from
// derive_seed(seed, r), so the result does not depend on the worker count.
ErrorEstimate estimate_rejection_rate(const Scenario& scenario,
                                      std::uint64_t seed, int workers = 1);

struct AlphaSearch {
  double lower = 0.01;
  double upper = 0.99;
  int max_iterations = 12;
  double tolerance = 1e-3;

  void validate() const {
    if (!(lower > 0.0 && lower < upper && upper < 1.0))
      throw ParameterError("search interval must satisfy 0 < lower < upper < 1");
    if (max_iterations < 0) throw ParameterError("negative iteration budget");
    if (!(tolerance >= 0.0)) throw ParameterError("negative tolerance");
  }
};

struct AlphaAdjustment {
  double target = 0.0;
  double adjusted = 0.0;
  std::vector<std::pair<double, ErrorEstimate>> trace;
};

// Finds a nominal significance level whose empirical type-I error matches
// `target`, by bisection on the nominal level. Every candidate is evaluated
// with the same master seed, which makes the empirical error a
// deterministic nondecreasing function of the nominal level. Fails with
// SearchError when the endpoint estimates do not bracket the target, when
// the bracket shrinks below the tolerance, or when the budget runs out.
// Success means the target lies inside the candidate's 95% interval.
AlphaAdjustment adjust_alpha(const Scenario& scenario, double target,
                             const AlphaSearch& search, std::uint64_t seed,
                             int workers = 1);

struct RocPoint {
  double alpha = 0.0;
  ErrorEstimate fpr;
  ErrorEstimate tpr;
};

// Evaluates false/true positive rates over a grid of nominal levels. The
// null and alternative scenarios each keep a fixed seed across all levels,
// so the empirical FPR is nondecreasing in alpha.
std::vector<RocPoint> roc_sweep(const Scenario& null_scenario,
                                const Scenario& signal_scenario,
                                const std::vector<double>& levels,
                                std::uint64_t seed, int workers = 1);

}  // namespace mcssa

#endif
