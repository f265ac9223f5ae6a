#pragma once

#include "bqlogdet/beta_prior.hpp"
#include "bqlogdet/bounds.hpp"
#include "bqlogdet/kernels.hpp"
#include "bqlogdet/trace.hpp"

#include <optional>
#include <vector>

namespace bqlogdet {

/// Observation noise entering the GP.
enum class NoiseModel {
  probe_covariance,  ///< full Gaussian-probe covariance across orders
  diagonal,          ///< empirical per-order squared standard errors only
};

const char* to_string(NoiseModel model);

/// Posterior over logdet of the normalized matrix.
struct GpPrediction {
  double mean = 0.0;
  double variance = 0.0;
  double log_marginal_likelihood = 0.0;
  double jitter = 0.0;  ///< diagonal jitter that was needed, relative to the mean diagonal
};

DenseMatrix observation_noise(const MomentObservations& obs, NoiseModel model);

/// Conditions the kernel GP on the moment residuals y_k - E_prior[lambda(A)^k]
/// and predicts the log-series functional. Throws SingularGramError when the
/// Gram matrix stays singular after jitter 1e-6.
GpPrediction gp_posterior(const MomentObservations& obs, const RawMomentKernel& kernel, const BetaPrior& prior,
                          NoiseModel noise = NoiseModel::probe_covariance);

/// log marginal likelihood + log P(b <= logdet <= a) under the prediction.
double bounded_log_likelihood(const GpPrediction& prediction, const LogDetBounds& bounds);

struct TuningResult {
  RawMomentKernel kernel;
  GpPrediction prediction;
  double objective = 0.0;
  bool fallback = false;  ///< every candidate put zero mass inside the bounds
};

/// Signal variances searched by tune_hyperparameters: 25 log-spaced values on [1e-4, 1e2].
std::vector<double> signal_variance_grid();
/// Kernel shapes searched for a family, before the signal variance.
std::vector<RawMomentKernel> kernel_shape_grid(KernelFamily family);

/// Exhaustive grid search maximizing the bound-augmented marginal likelihood
/// (plain marginal likelihood when bounds are absent).
TuningResult tune_hyperparameters(const MomentObservations& obs, KernelFamily family, const BetaPrior& prior,
                                  const std::optional<LogDetBounds>& bounds,
                                  NoiseModel noise = NoiseModel::probe_covariance);

struct TruncatedPosterior {
  double mean = 0.0;
  double variance = 0.0;
  bool underflow = false;  ///< mass in [lower, upper] underflowed; clamped fallback used
};

/// Moments of N(mean, variance) restricted to [lower, upper]. Infinite limits allowed.
TruncatedPosterior truncate_posterior(double mean, double variance, double lower, double upper);

}  // namespace bqlogdet
