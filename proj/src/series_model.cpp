#include "mcssa/series_model.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numbers>

namespace mcssa {

TimeSeries generate_ar1(const Ar1Model& model, RngEngine& rng) {
  model.validate();
  std::normal_distribution<double> normal;
  Eigen::VectorXd x(model.n);
  x[0] = std::sqrt(model.stationary_variance()) * normal(rng);
  for (int t = 1; t < model.n; ++t)
    x[t] = model.varphi * x[t - 1] + model.delta * normal(rng);
  return TimeSeries(std::move(x));
}

TimeSeries synthesize(const SignalSpec& signal, int n, const Ar1Model& model,
                      RngEngine& rng) {
  signal.validate();
  if (n != model.n)
    throw ParameterError("requested length disagrees with the noise model");
  TimeSeries noise = generate_ar1(model, rng);
  if (signal.amplitude == 0.0) return noise;
  Eigen::VectorXd x = noise.values();
  const double omega = 2.0 * std::numbers::pi / signal.period;
  for (int t = 0; t < n; ++t)
    x[t] += signal.amplitude * std::sin(omega * (t + 1) + signal.phase);
  return TimeSeries(std::move(x));
}

Ar1Model estimate_ar1(const TimeSeries& series) {
  const Eigen::VectorXd& x = series.values();
  const auto n = x.size();
  if (n < 10)
    throw ParameterError("AR(1) estimation needs at least 10 observations");
  if ((x.array() == x[0]).all())
    throw EstimationError("cannot fit AR(1) to a constant series");

  // Profile likelihood: for fixed varphi the exact Gaussian -2 log
  // likelihood, after concentrating out delta^2 = S(varphi)/n, is
  // n*log S(varphi) - log(1-varphi^2) up to constants, with
  // S(varphi) = (1-varphi^2) x_1^2 + sum_{t>=2} (x_t - varphi x_{t-1})^2.
  // The sums below make S an O(1) quadratic in varphi.
  const double head_sq = x[0] * x[0];
  const double c_yy = x.tail(n - 1).squaredNorm();
  const double c_xx = x.head(n - 1).squaredNorm();
  const double c_xy = x.tail(n - 1).dot(x.head(n - 1));

  const auto weighted_sum_sq = [&](double phi) {
    return head_sq + c_yy - 2.0 * phi * c_xy + phi * phi * (c_xx - head_sq);
  };
  const auto objective = [&](double phi) {
    return static_cast<double>(n) * std::log(weighted_sum_sq(phi)) -
           std::log1p(-phi * phi);
  };

  constexpr double kUpper = 1.0 - 1e-6;
  const auto [phi_raw, value] =
      boost::math::tools::brent_find_minima(objective, 0.0, kUpper, 40);
  (void)value;

  const double sigma2 = weighted_sum_sq(phi_raw) / static_cast<double>(n);
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
    throw EstimationError("AR(1) innovation variance is not positive");

  const double se =
      std::sqrt((1.0 - phi_raw * phi_raw) / static_cast<double>(n));
  double phi = (se > std::abs(phi_raw)) ? 0.0 : phi_raw;
  if (phi > kUpper) phi = kUpper;

  Ar1Model fit{phi, std::sqrt(sigma2), static_cast<int>(n)};
  fit.validate();
  return fit;
}

}  // namespace mcssa
