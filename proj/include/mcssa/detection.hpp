#ifndef MCSSA_DETECTION_HPP
#define MCSSA_DETECTION_HPP

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mcssa/bases.hpp"
#include "mcssa/types.hpp"

namespace mcssa {

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

// Squared projection norms of `count` AR(1) surrogate paths onto a fixed set
// of directions, with per-direction mean and standard deviation (divisor
// count-1). projections is H' x G: one column per surrogate.
struct SurrogateSample {
  Eigen::MatrixXd projections;
  Eigen::VectorXd means;
  Eigen::VectorXd sds;

  int count() const { return static_cast<int>(projections.cols()); }
  int dimension() const { return static_cast<int>(projections.rows()); }
};

SurrogateSample surrogate_projections(const Ar1Model& model,
                                      const Eigen::MatrixXd& directions,
                                      int count, std::uint64_t seed,
                                      int workers = 1);

// One-dimensional prediction interval from an empirical sample. One-tailed:
// [0, q_gamma]; two-tailed: [q_(1-gamma)/2, q_(1+gamma)/2].
Interval single_interval(std::span<const double> sample, double confidence,
                         bool two_tailed);

struct TestConfig {
  int window = 0;                      // L
  int surrogates = 0;                  // G
  double confidence = 0.8;             // gamma = 1 - alpha
  bool two_tailed = false;
  BasisKind basis = BasisKind::eigenvector;
  FrequencyRange range;
  std::optional<Ar1Model> model;       // given null model; empty = estimate

  void validate() const {
    if (window < 2) throw ParameterError("window length must be at least 2");
    if (surrogates < 2)
      throw ParameterError("at least 2 surrogates are required");
    if (!(confidence > 0.0 && confidence < 1.0))
      throw ParameterError("confidence level must lie in (0, 1)");
    range.validate();
    if (model) model->validate();
  }
};

// Outcome of a multiple test. `frequencies` and `observed` cover the full
// basis (size H); `included` holds the indices that entered the test and
// `lower`/`upper` the post-hoc interval for each included index, aligned
// with `included`. freq_max is only set when the test rejects.
struct TestResult {
  bool reject = false;
  std::optional<double> freq_max;
  std::vector<double> frequencies;
  Eigen::VectorXd observed;
  std::vector<int> included;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  std::optional<double> q_upper;
  std::optional<double> q_lower;
  std::optional<Ar1Model> null_model;
};

// FWER-controlling multiple test: standardizes every projection by the
// surrogate mean/sd, takes the max (and min, if two-tailed) across
// directions within each surrogate, and compares the observed extreme
// statistic against the empirical quantile of those extremes. Rejection is
// strict inequality. freq_max is the frequency at the argmax of the
// standardized observed statistic.
TestResult multiple_test(const Eigen::VectorXd& observed,
                         std::span<const double> frequencies,
                         const SurrogateSample& sample, double confidence,
                         bool two_tailed);

// Bonferroni baseline: per-direction intervals at confidence
// 1 - (1-gamma)/H', reject if any direction escapes. Needs enough
// surrogates for the extreme per-direction quantile: the per-tail mass
// (1-gamma)/H' (halved again if two-tailed) must be at least 1/G.
TestResult bonferroni_test(const Eigen::VectorXd& observed,
                           std::span<const double> frequencies,
                           const SurrogateSample& sample, double confidence,
                           bool two_tailed);

// Full pipeline: resolve the null model (given or estimated from the
// series), build the basis, restrict to the frequency range, simulate
// surrogates and run the multiple test.
TestResult run_mcssa(const TimeSeries& series, const TestConfig& config,
                     std::uint64_t seed, int workers = 1);

}  // namespace mcssa

#endif
