#include "mcssa/ssa.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <utility>

namespace mcssa {

TrajectoryMatrix::TrajectoryMatrix(Eigen::VectorXd series, int window)
    : series_(std::move(series)), window_(window) {
  if (window_ < 2 || window_ >= series_.size())
    throw ParameterError("window length must satisfy 1 < L < N");
}

Eigen::MatrixXd TrajectoryMatrix::dense() const {
  const int k = column_count();
  Eigen::MatrixXd x(window_, k);
  for (int j = 0; j < k; ++j) x.col(j) = series_.segment(j, window_);
  return x;
}

Eigen::MatrixXd TrajectoryMatrix::lag_covariance() const {
  const int l = window_;
  const int k = column_count();
  const double* x = series_.data();
  Eigen::MatrixXd c(l, l);
  for (int d = 0; d < l; ++d) {
    // Start with C(0, d) = sum_j x[j] x[j+d], then slide the window:
    // each step drops the leading product and gains one past the end.
    double s = series_.segment(0, k).dot(series_.segment(d, k));
    c(0, d) = s;
    for (int a = 1; a + d < l; ++a) {
      s += x[a - 1 + k] * x[a - 1 + k + d] - x[a - 1] * x[a - 1 + d];
      c(a, a + d) = s;
    }
  }
  c.triangularView<Eigen::StrictlyLower>() =
      c.triangularView<Eigen::StrictlyUpper>().transpose();
  return c;
}

double TrajectoryMatrix::squared_frobenius_norm() const {
  const int k = column_count();
  double total = 0.0;
  for (int j = 0; j < k; ++j) total += series_.segment(j, window_).squaredNorm();
  return total;
}

TrajectoryMatrix embed(const TimeSeries& series, int window) {
  return TrajectoryMatrix(series.values(), window);
}

SsaDecomposition decompose(const TrajectoryMatrix& trajectory) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      trajectory.lag_covariance());
  if (solver.info() != Eigen::Success)
    throw ComputationError("eigendecomposition of the lag covariance failed");

  const int l = trajectory.window_length();
  const Eigen::VectorXd& ascending = solver.eigenvalues();
  const double largest = ascending[l - 1];
  const double threshold = 1e-12 * largest;

  int rank = 0;
  const int max_rank = std::min(l, trajectory.column_count());
  for (int i = l - 1; i >= 0 && rank < max_rank; --i) {
    if (!(ascending[i] >= threshold) || !(ascending[i] > 0.0)) break;
    ++rank;
  }

  SsaDecomposition result;
  result.eigenvalues.resize(rank);
  result.eigenvectors.resize(l, rank);
  for (int i = 0; i < rank; ++i) {
    result.eigenvalues[i] = ascending[l - 1 - i];
    result.eigenvectors.col(i) = solver.eigenvectors().col(l - 1 - i);
  }
  return result;
}

Eigen::VectorXd squared_projection_norms(const TrajectoryMatrix& trajectory,
                                         const Eigen::MatrixXd& directions) {
  if (directions.rows() != trajectory.window_length())
    throw ParameterError("projection vectors must have length L");
  if (directions.cols() == 0)
    throw ParameterError("at least one projection vector is required");
  for (Eigen::Index k = 0; k < directions.cols(); ++k) {
    if (std::abs(directions.col(k).norm() - 1.0) > 1e-8)
      throw ParameterError("projection vectors must have unit norm");
  }
  const Eigen::MatrixXd c = trajectory.lag_covariance();
  const Eigen::MatrixXd cw = c * directions;
  Eigen::VectorXd norms(directions.cols());
  for (Eigen::Index k = 0; k < directions.cols(); ++k)
    norms[k] = std::max(0.0, directions.col(k).dot(cw.col(k)));
  return norms;
}

}  // namespace mcssa
