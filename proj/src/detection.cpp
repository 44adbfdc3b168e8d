#include "mcssa/detection.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "mcssa/parallel.hpp"
#include "mcssa/quantile.hpp"
#include "mcssa/rng.hpp"
#include "mcssa/series_model.hpp"
#include "mcssa/ssa.hpp"

namespace mcssa {

namespace {

void check_unit_columns(const Eigen::MatrixXd& directions) {
  for (Eigen::Index k = 0; k < directions.cols(); ++k)
    if (std::abs(directions.col(k).norm() - 1.0) > 1e-8)
      throw ParameterError("projection vectors must have unit norm");
}

Eigen::VectorXd standardized(const Eigen::VectorXd& values,
                             const SurrogateSample& sample) {
  return (values - sample.means).cwiseQuotient(sample.sds);
}

void require_positive_spread(const SurrogateSample& sample) {
  for (Eigen::Index k = 0; k < sample.sds.size(); ++k)
    if (!(sample.sds[k] > 0.0))
      throw DegenerateSurrogateError(
          "surrogate projections have zero spread in some direction");
}

void check_test_inputs(const Eigen::VectorXd& observed,
                       std::span<const double> frequencies,
                       const SurrogateSample& sample, double confidence) {
  if (observed.size() == 0) throw ParameterError("no observed projections");
  if (observed.size() != sample.dimension() ||
      frequencies.size() != static_cast<std::size_t>(observed.size()))
    throw ParameterError(
        "observed projections, frequencies and surrogate rows disagree");
  if (sample.count() < 2)
    throw ParameterError("at least 2 surrogates are required");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw ParameterError("confidence level must lie in (0, 1)");
}

int standardized_argmax(const Eigen::VectorXd& stats) {
  Eigen::Index arg = 0;
  stats.maxCoeff(&arg);
  return static_cast<int>(arg);
}

}  // namespace

SurrogateSample surrogate_projections(const Ar1Model& model,
                                      const Eigen::MatrixXd& directions,
                                      int count, std::uint64_t seed,
                                      int workers) {
  model.validate();
  if (count < 2) throw ParameterError("at least 2 surrogates are required");
  if (directions.cols() == 0)
    throw ParameterError("at least one projection vector is required");
  const int window = static_cast<int>(directions.rows());
  if (window < 2 || window >= model.n)
    throw ParameterError("projection vector length must satisfy 1 < L < n");
  check_unit_columns(directions);

  SurrogateSample sample;
  sample.projections.resize(directions.cols(), count);
  parallel_for(static_cast<std::size_t>(count), workers, [&](std::size_t i) {
    RngEngine engine = make_engine(derive_seed(seed, i));
    const TimeSeries path = generate_ar1(model, engine);
    sample.projections.col(static_cast<Eigen::Index>(i)) =
        squared_projection_norms(embed(path, window), directions);
  });

  sample.means = sample.projections.rowwise().mean();
  sample.sds.resize(directions.cols());
  for (Eigen::Index k = 0; k < directions.cols(); ++k) {
    const auto centered = sample.projections.row(k).array() - sample.means[k];
    sample.sds[k] =
        std::sqrt(centered.square().sum() / static_cast<double>(count - 1));
  }
  return sample;
}

Interval single_interval(std::span<const double> sample, double confidence,
                         bool two_tailed) {
  if (sample.size() < 2)
    throw ParameterError("interval needs a sample of size >= 2");
  if (!(confidence >= 0.0 && confidence <= 1.0))
    throw ParameterError("confidence level must lie in [0, 1]");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  if (two_tailed)
    return {quantile_sorted(sorted, 0.5 * (1.0 - confidence)),
            quantile_sorted(sorted, 0.5 * (1.0 + confidence))};
  return {0.0, quantile_sorted(sorted, confidence)};
}

TestResult multiple_test(const Eigen::VectorXd& observed,
                         std::span<const double> frequencies,
                         const SurrogateSample& sample, double confidence,
                         bool two_tailed) {
  check_test_inputs(observed, frequencies, sample, confidence);
  require_positive_spread(sample);

  const int dim = sample.dimension();
  const int count = sample.count();

  // Extreme statistics per surrogate: max (and min) over directions of the
  // standardized projections.
  std::vector<double> maxima(static_cast<std::size_t>(count));
  std::vector<double> minima(two_tailed ? static_cast<std::size_t>(count) : 0);
  for (int i = 0; i < count; ++i) {
    const Eigen::VectorXd stats =
        standardized(sample.projections.col(i), sample);
    maxima[static_cast<std::size_t>(i)] = stats.maxCoeff();
    if (two_tailed) minima[static_cast<std::size_t>(i)] = stats.minCoeff();
  }

  const double q_upper = empirical_quantile(
      maxima, two_tailed ? 0.5 * (1.0 + confidence) : confidence);

  TestResult result;
  result.q_upper = q_upper;

  const Eigen::VectorXd observed_stats = standardized(observed, sample);
  const int arg = standardized_argmax(observed_stats);
  bool reject = observed_stats[arg] > q_upper;

  result.upper = sample.means + q_upper * sample.sds;
  if (two_tailed) {
    const double q_lower = empirical_quantile(minima, 0.5 * (1.0 - confidence));
    result.q_lower = q_lower;
    result.lower = sample.means + q_lower * sample.sds;
    if (observed_stats.minCoeff() < q_lower) reject = true;
  } else {
    result.lower = Eigen::VectorXd::Zero(dim);
  }

  result.reject = reject;
  if (reject) result.freq_max = frequencies[static_cast<std::size_t>(arg)];
  result.frequencies.assign(frequencies.begin(), frequencies.end());
  result.observed = observed;
  result.included.resize(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) result.included[static_cast<std::size_t>(k)] = k;
  return result;
}

TestResult bonferroni_test(const Eigen::VectorXd& observed,
                           std::span<const double> frequencies,
                           const SurrogateSample& sample, double confidence,
                           bool two_tailed) {
  check_test_inputs(observed, frequencies, sample, confidence);
  require_positive_spread(sample);

  const int dim = sample.dimension();
  const int count = sample.count();
  const double tail_mass =
      (1.0 - confidence) / (two_tailed ? 2.0 * dim : 1.0 * dim);
  // Requires G >= H'/(1-gamma) per tail; the epsilon keeps an exactly
  // sufficient count from failing by one ulp.
  if (tail_mass * count < 1.0 - 1e-9)
    throw SampleSizeError(
        "too few surrogates for the Bonferroni-corrected quantile level");
  const double per_test = 1.0 - (1.0 - confidence) / dim;

  TestResult result;
  result.lower = Eigen::VectorXd::Zero(dim);
  result.upper.resize(dim);
  bool reject = false;
  for (int k = 0; k < dim; ++k) {
    const Eigen::VectorXd row = sample.projections.row(k).transpose();
    const Interval interval = single_interval(
        std::span<const double>(row.data(), static_cast<std::size_t>(count)),
        per_test, two_tailed);
    result.upper[k] = interval.upper;
    if (two_tailed) result.lower[k] = interval.lower;
    if (observed[k] > interval.upper) reject = true;
    if (two_tailed && observed[k] < interval.lower) reject = true;
  }

  result.reject = reject;
  if (reject) {
    const int arg = standardized_argmax(standardized(observed, sample));
    result.freq_max = frequencies[static_cast<std::size_t>(arg)];
  }
  result.frequencies.assign(frequencies.begin(), frequencies.end());
  result.observed = observed;
  result.included.resize(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) result.included[static_cast<std::size_t>(k)] = k;
  return result;
}

TestResult run_mcssa(const TimeSeries& series, const TestConfig& config,
                     std::uint64_t seed, int workers) {
  config.validate();
  if (config.window >= series.size())
    throw ParameterError("window length must be smaller than the series");

  Ar1Model model;
  if (config.model) {
    model = *config.model;
    if (model.n != static_cast<int>(series.size()))
      throw ParameterError("null model length disagrees with the series");
  } else {
    model = estimate_ar1(series);
  }

  const ProjectionBasis basis = config.basis == BasisKind::eigenvector
                                    ? eigen_basis(series, config.window)
                                    : sine_basis(config.window);
  const std::vector<int> included = select_in_range(basis, config.range);

  const Eigen::VectorXd observed_all =
      squared_projection_norms(embed(series, config.window), basis.vectors);

  const int dim = static_cast<int>(included.size());
  Eigen::MatrixXd directions(config.window, dim);
  Eigen::VectorXd observed(dim);
  std::vector<double> frequencies(static_cast<std::size_t>(dim));
  for (int k = 0; k < dim; ++k) {
    directions.col(k) = basis.vectors.col(included[static_cast<std::size_t>(k)]);
    observed[k] = observed_all[included[static_cast<std::size_t>(k)]];
    frequencies[static_cast<std::size_t>(k)] =
        basis.frequencies[static_cast<std::size_t>(
            included[static_cast<std::size_t>(k)])];
  }

  const SurrogateSample sample = surrogate_projections(
      model, directions, config.surrogates, seed, workers);
  TestResult result = multiple_test(observed, frequencies, sample,
                                    config.confidence, config.two_tailed);

  result.frequencies = basis.frequencies;
  result.observed = observed_all;
  result.included = included;
  result.null_model = model;
  return result;
}

}  // namespace mcssa
