#ifndef MCSSA_ESPRIT_HPP
#define MCSSA_ESPRIT_HPP

#include <Eigen/Core>

namespace mcssa {

struct FrequencyEstimate {
  double frequency = 0.0;
};

// Labels a vector with its dominant frequency in [0, 0.5] via rank-2
// least-squares ESPRIT: embed the vector with an inner window, take the two
// leading eigenvectors of the inner lag covariance, solve the shift
// invariance equation and read the frequency off the eigenvalues of the
// resulting 2x2 matrix. Vectors whose inner covariance has numerical rank
// below 2 (constants, single exponentials) are labeled 0; a dominant
// negative real root is labeled 0.5. Requires length >= 4.
FrequencyEstimate esprit_main_frequency(const Eigen::VectorXd& vector);

}  // namespace mcssa

#endif
