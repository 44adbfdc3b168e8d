#ifndef MCSSA_SERIES_MODEL_HPP
#define MCSSA_SERIES_MODEL_HPP

#include "mcssa/rng.hpp"
#include "mcssa/types.hpp"

namespace mcssa {

// Draws one stationary path: xi_1 ~ N(0, delta^2/(1-varphi^2)), then the
// recursion. No burn-in is needed because the first value already has the
// stationary distribution.
TimeSeries generate_ar1(const Ar1Model& model, RngEngine& rng);

// Sinusoid plus AR(1) noise; n must equal model.n. With amplitude zero the
// output is bit-identical to generate_ar1 under the same engine state.
TimeSeries synthesize(const SignalSpec& signal, int n, const Ar1Model& model,
                      RngEngine& rng);

// Exact zero-mean Gaussian maximum likelihood for the AR(1) coefficient and
// innovation scale, with the coefficient constrained to [0, 1). When the
// asymptotic standard error sqrt((1-varphi^2)/n) exceeds |varphi| the
// coefficient is snapped to 0 (white noise); the innovation variance keeps
// the value fitted before snapping.
Ar1Model estimate_ar1(const TimeSeries& series);

}  // namespace mcssa

#endif
