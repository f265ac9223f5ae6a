#pragma once

#include "bqlogdet/operator.hpp"

namespace bqlogdet {

/// Two-point quadrature bounds b <= Tr(log K) <= a from mu1 = Tr(K),
/// mu2 = ||K||_F^2 and a spectral enclosure [alpha, beta].
struct LogDetBounds {
  double lower = 0.0;
  double upper = 0.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  Index n = 0;
};

/// Throws BoundsUnavailableError when alpha <= 0.
LogDetBounds compute_bounds(double mu1, double mu2, double alpha, double beta, Index n);

/// Bounds for the normalized operator using its recorded spectral interval.
LogDetBounds compute_bounds(const NormalizedOperator& k);

}  // namespace bqlogdet
