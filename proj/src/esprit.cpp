#include "mcssa/esprit.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "mcssa/errors.hpp"
#include "mcssa/ssa.hpp"

namespace mcssa {

FrequencyEstimate esprit_main_frequency(const Eigen::VectorXd& vector) {
  const int n = static_cast<int>(vector.size());
  if (n < 4)
    throw ParameterError("frequency estimation needs at least 4 samples");

  // Inner window: half the length, but kept in [3, n-1] so the shifted
  // blocks have at least two rows and two columns.
  const int inner = std::clamp((n + 1) / 2, 3, n - 1);

  const TrajectoryMatrix trajectory(vector, inner);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      trajectory.lag_covariance());
  if (solver.info() != Eigen::Success)
    throw ComputationError("inner eigendecomposition failed");

  const double lambda1 = solver.eigenvalues()[inner - 1];
  const double lambda2 = solver.eigenvalues()[inner - 2];
  if (!(lambda1 > 0.0) || lambda2 <= 1e-12 * lambda1)
    return {0.0};

  Eigen::MatrixXd subspace(inner, 2);
  subspace.col(0) = solver.eigenvectors().col(inner - 1);
  subspace.col(1) = solver.eigenvectors().col(inner - 2);

  // Shift invariance: rows 1..end of the subspace equal rows 0..end-1 times
  // a 2x2 matrix whose eigenvalues are the signal roots.
  const Eigen::MatrixXd head = subspace.topRows(inner - 1);
  const Eigen::MatrixXd tail = subspace.bottomRows(inner - 1);
  const Eigen::Matrix2d shift = head.colPivHouseholderQr().solve(tail);

  const double tr = shift.trace();
  const double det = shift.determinant();
  const double disc = tr * tr - 4.0 * det;

  // A double real root (trend-like vectors) can land an epsilon below zero;
  // only a discriminant that is negative relative to tr^2 means a genuine
  // complex pair.
  double freq;
  if (disc < 0.0 && -disc > 1e-12 * tr * tr) {
    freq = std::atan2(std::sqrt(-disc), tr) / (2.0 * std::numbers::pi);
  } else {
    const double root = std::sqrt(disc);
    const double r1 = 0.5 * (tr + root);
    const double r2 = 0.5 * (tr - root);
    const double dominant = std::abs(r1) >= std::abs(r2) ? r1 : r2;
    freq = dominant < 0.0 ? 0.5 : 0.0;
  }
  return {std::clamp(freq, 0.0, 0.5)};
}

}  // namespace mcssa
