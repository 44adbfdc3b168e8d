#ifndef MCSSA_BASES_HPP
#define MCSSA_BASES_HPP

#include <Eigen/Core>
#include <vector>

#include "mcssa/types.hpp"

namespace mcssa {

enum class BasisKind { eigenvector, sinusoid };

// Closed frequency interval used to restrict a test to part of the spectrum.
struct FrequencyRange {
  double low = 0.0;
  double high = 0.5;

  void validate() const {
    if (!(low >= 0.0 && low <= high && high <= 0.5))
      throw ParameterError("frequency range must satisfy 0 <= low <= high <= 0.5");
  }
  bool contains(double f) const { return f >= low && f <= high; }
};

// A set of unit-norm projection vectors (as matrix columns) together with
// the frequency label of each vector.
struct ProjectionBasis {
  Eigen::MatrixXd vectors;
  std::vector<double> frequencies;
  BasisKind kind = BasisKind::sinusoid;

  int size() const { return static_cast<int>(vectors.cols()); }
};

// L normalized sine vectors at frequencies k/(2L+1), k = 1..L. Not exactly
// orthogonal, but nearly so; the frequencies are strictly increasing.
ProjectionBasis sine_basis(int window);

// Eigenvectors of the series' own trajectory matrix, labeled by their
// dominant frequency. Vector count equals the numerical rank of the
// decomposition (min(L, K) for generic series).
ProjectionBasis eigen_basis(const TimeSeries& series, int window);

// Indices of basis vectors whose frequency lies in [range.low, range.high],
// in basis order. Empty selection is an error.
std::vector<int> select_in_range(const ProjectionBasis& basis,
                                 const FrequencyRange& range);

}  // namespace mcssa

#endif
