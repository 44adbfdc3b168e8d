#ifndef MCSSA_TYPES_HPP
#define MCSSA_TYPES_HPP

#include <Eigen/Core>
#include <utility>

#include "mcssa/errors.hpp"

namespace mcssa {

// Stationary AR(1) noise: xi_t = varphi * xi_{t-1} + delta * eps_t with
// iid standard normal innovations, plus the series length it generates.
struct Ar1Model {
  double varphi = 0.0;
  double delta = 1.0;
  int n = 0;

  void validate() const {
    if (!(varphi >= 0.0 && varphi < 1.0))
      throw ParameterError("AR(1) coefficient must lie in [0, 1)");
    if (!(delta > 0.0))
      throw ParameterError("AR(1) innovation scale must be positive");
    if (n < 2) throw ParameterError("AR(1) series length must be at least 2");
  }

  double stationary_variance() const {
    return delta * delta / (1.0 - varphi * varphi);
  }
};

// Deterministic sinusoid added on top of the noise:
// s_t = amplitude * sin(2 pi t / period + phase), t = 1..n.
struct SignalSpec {
  double amplitude = 0.0;
  double period = 0.0;
  double phase = 0.0;

  void validate() const {
    if (!(amplitude >= 0.0))
      throw ParameterError("signal amplitude must be nonnegative");
    if (amplitude > 0.0 && !(period > 2.0))
      throw ParameterError("signal period must exceed 2 samples");
  }
};

// A finite real-valued series of length >= 2.
class TimeSeries {
 public:
  explicit TimeSeries(Eigen::VectorXd values) : values_(std::move(values)) {
    if (values_.size() < 2)
      throw DataError("time series must contain at least 2 values");
    if (!values_.allFinite())
      throw DataError("time series contains non-finite values");
  }

  Eigen::Index size() const { return values_.size(); }
  double operator[](Eigen::Index i) const { return values_[i]; }
  const Eigen::VectorXd& values() const { return values_; }

 private:
  Eigen::VectorXd values_;
};

}  // namespace mcssa

#endif
