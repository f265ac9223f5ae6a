#pragma once

#include "bqlogdet/beta_prior.hpp"
#include "bqlogdet/bounds.hpp"
#include "bqlogdet/gp.hpp"
#include "bqlogdet/kernels.hpp"
#include "bqlogdet/operator.hpp"
#include "bqlogdet/trace.hpp"

#include <cstdint>
#include <optional>

namespace bqlogdet {

enum class BoundsMode { on, off };

struct BqOptions {
  Index order = 25;
  Index probes = 20;
  std::uint64_t seed = 0;
  KernelFamily family = KernelFamily::histogram;
  bool tune = true;
  /// Used when tune is false.
  RawMomentKernel kernel{HistogramKernel{8}, 1.0};
  BoundsMode bounds = BoundsMode::on;
  /// Lower bound on the spectrum of the original matrix, used when it beats Gershgorin.
  std::optional<double> floor;
  /// Normalization scale replacing the Gershgorin upper bound.
  std::optional<double> scale;
  NoiseModel noise = NoiseModel::probe_covariance;
  /// Fit the Beta prior on [lower spectral bound, 1] rather than [0, 1].
  bool interval_prior = true;
};

struct LogDetEstimate {
  double gp_mean = 0.0;      ///< untruncated, normalized scale
  double gp_variance = 0.0;
  std::optional<LogDetBounds> bounds;  ///< normalized scale; empty when unavailable
  double truncated_mean = 0.0;
  double truncated_variance = 0.0;
  double correction = 0.0;
  double value = 0.0;   ///< truncated_mean + correction
  double stddev = 0.0;  ///< sqrt(truncated_variance)

  RawMomentKernel kernel;
  BetaPrior prior;
  Index order = 0;
  Index probes = 0;
  std::uint64_t mvp_count = 0;
  double jitter = 0.0;

  bool truncated = false;
  bool truncation_underflow = false;
  bool tuning_fallback = false;
};

/// Normalize, bound, observe moments with Gaussian probes, tune, predict,
/// truncate and de-normalize. Uses order * probes matrix-vector products.
LogDetEstimate probabilistic_logdet(const LinearOperator& k, const BqOptions& options);

/// The same pipeline on precomputed observations of A = I - K'.
LogDetEstimate probabilistic_logdet(const NormalizedOperator& k, const MomentObservations& obs,
                                    const BqOptions& options);

/// Normalization step shared by the estimators: applies the floor and scale options.
NormalizedOperator normalize_for(const LinearOperator& k, const BqOptions& options);

}  // namespace bqlogdet
