#ifndef MCSSA_SSA_HPP
#define MCSSA_SSA_HPP

#include <Eigen/Core>

#include "mcssa/types.hpp"

namespace mcssa {

// Hankel trajectory matrix of a series: entry(i, j) = x[i + j], shape L x K
// with K = N - L + 1. The matrix is stored implicitly as the series plus the
// window length; dense() materializes it on demand.
class TrajectoryMatrix {
 public:
  TrajectoryMatrix(Eigen::VectorXd series, int window);

  int window_length() const { return window_; }
  int column_count() const {
    return static_cast<int>(series_.size()) - window_ + 1;
  }
  double entry(int i, int j) const { return series_[i + j]; }
  const Eigen::VectorXd& series() const { return series_; }

  Eigen::MatrixXd dense() const;

  // X * X^T computed from the series in O(L*N) via sliding lag sums.
  Eigen::MatrixXd lag_covariance() const;

  double squared_frobenius_norm() const;

 private:
  Eigen::VectorXd series_;
  int window_;
};

TrajectoryMatrix embed(const TimeSeries& series, int window);

// Eigendecomposition of X X^T restricted to the numerically nonzero part:
// eigenvalues descending, eigenvectors the matching orthonormal columns.
// Components with eigenvalue below 1e-12 * lambda_1 are dropped.
struct SsaDecomposition {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;

  int rank() const { return static_cast<int>(eigenvalues.size()); }
};

SsaDecomposition decompose(const TrajectoryMatrix& trajectory);

// Squared projection norms ||X^T w_k||^2 for every column w_k of
// `directions`. Columns must have unit norm (tolerance 1e-8) and length L.
Eigen::VectorXd squared_projection_norms(const TrajectoryMatrix& trajectory,
                                         const Eigen::MatrixXd& directions);

}  // namespace mcssa

#endif
