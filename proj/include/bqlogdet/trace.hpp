#pragma once

#include "bqlogdet/operator.hpp"
#include "bqlogdet/probes.hpp"

#include <cstdint>

namespace bqlogdet {

struct TraceEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;  ///< sample sd across probes / sqrt(N_r); 0 for a single probe
};

/// Hutchinson estimate (1/N_r) sum_i r_i^T A r_i.
TraceEstimate estimate_trace(const LinearOperator& op, const ProbeSet& probes);

/// Noisy observations y_k ~ Tr(A^k)/n, k = 1..m.
struct MomentObservations {
  Index order = 0;
  Index dimension = 0;
  Index probe_count = 0;
  Vector values;  ///< y_k at index k-1
  Vector noise;   ///< s2_k: squared standard error of y_k across probes
  /// Cov(y_k, y_l) for Gaussian probes, 2 Tr(A^{k+l}) / (n^2 N_r), with the
  /// trace estimated from the same probe chains as (A^k r)^T (A^l r).
  DenseMatrix noise_covariance;
  std::uint64_t mvp_count = 0;
};

/// Propagates z_k = A z_{k-1} from each probe, m * N_r products in total.
MomentObservations estimate_power_moments(const LinearOperator& a, Index order, const ProbeSet& probes);

/// Noise-free observations from a known spectrum of A.
MomentObservations moments_from_spectrum(const Vector& spectrum, Index order);

}  // namespace bqlogdet
