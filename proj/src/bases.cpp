#include "mcssa/bases.hpp"

#include <cmath>
#include <numbers>

#include "mcssa/esprit.hpp"
#include "mcssa/ssa.hpp"

namespace mcssa {

ProjectionBasis sine_basis(int window) {
  if (window < 2) throw ParameterError("sine basis needs window length >= 2");
  ProjectionBasis basis;
  basis.kind = BasisKind::sinusoid;
  basis.vectors.resize(window, window);
  basis.frequencies.resize(window);
  const double denominator = 2.0 * window + 1.0;
  for (int k = 1; k <= window; ++k) {
    const double f = k / denominator;
    Eigen::VectorXd v(window);
    for (int i = 1; i <= window; ++i)
      v[i - 1] = std::sin(2.0 * std::numbers::pi * f * i);
    basis.vectors.col(k - 1) = v / v.norm();
    basis.frequencies[k - 1] = f;
  }
  return basis;
}

ProjectionBasis eigen_basis(const TimeSeries& series, int window) {
  const SsaDecomposition dec = decompose(embed(series, window));
  ProjectionBasis basis;
  basis.kind = BasisKind::eigenvector;
  basis.vectors = dec.eigenvectors;
  basis.frequencies.resize(dec.rank());
  for (int i = 0; i < dec.rank(); ++i)
    basis.frequencies[i] =
        esprit_main_frequency(dec.eigenvectors.col(i)).frequency;
  return basis;
}

std::vector<int> select_in_range(const ProjectionBasis& basis,
                                 const FrequencyRange& range) {
  range.validate();
  std::vector<int> indices;
  for (int k = 0; k < basis.size(); ++k)
    if (range.contains(basis.frequencies[k])) indices.push_back(k);
  if (indices.empty())
    throw RangeError("no projection vectors in the requested frequency range");
  return indices;
}

}  // namespace mcssa
