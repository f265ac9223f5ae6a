#include "bqlogdet/probabilistic.hpp"

#include "bqlogdet/errors.hpp"
#include "bqlogdet/probes.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace bqlogdet {

NormalizedOperator normalize_for(const LinearOperator& k, const BqOptions& options) {
  const LinearOperator op = options.floor ? k.with_floor_hint(*options.floor) : k;
  NormalizedOperator norm = normalize(op, options.scale);
  if (norm.interval.lower < 0.0) {
    throw NotPsdError("spectral lower bound " + std::to_string(norm.interval.lower * norm.scale) +
                      " is negative; declare the operator PSD or supply a floor");
  }
  return norm;
}

LogDetEstimate probabilistic_logdet(const NormalizedOperator& k, const MomentObservations& obs,
                                    const BqOptions& options) {
  LogDetEstimate est;
  est.correction = k.correction;
  est.order = obs.order;
  est.probes = obs.probe_count;
  est.mvp_count = obs.mvp_count;
  if (k.interval.lower > 0.0) est.bounds = compute_bounds(k);

  est.prior = fit_beta_prior(k, options.interval_prior);
  const bool use_bounds = options.bounds == BoundsMode::on && est.bounds.has_value();

  GpPrediction prediction;
  if (options.tune) {
    const TuningResult tuned = tune_hyperparameters(obs, options.family, est.prior,
                                                    use_bounds ? est.bounds : std::nullopt, options.noise);
    est.kernel = tuned.kernel;
    est.tuning_fallback = tuned.fallback;
    prediction = tuned.prediction;
  } else {
    est.kernel = options.kernel;
    prediction = gp_posterior(obs, est.kernel, est.prior, options.noise);
  }
  est.gp_mean = prediction.mean;
  est.gp_variance = prediction.variance;
  est.jitter = prediction.jitter;

  if (use_bounds) {
    const TruncatedPosterior t =
        truncate_posterior(prediction.mean, prediction.variance, est.bounds->lower, est.bounds->upper);
    est.truncated_mean = t.mean;
    est.truncated_variance = t.variance;
    est.truncation_underflow = t.underflow;
    est.truncated = true;
  } else {
    est.truncated_mean = prediction.mean;
    est.truncated_variance = prediction.variance;
  }
  est.value = est.truncated_mean + est.correction;
  est.stddev = std::sqrt(est.truncated_variance);
  return est;
}

LogDetEstimate probabilistic_logdet(const LinearOperator& k, const BqOptions& options) {
  if (options.order < 1) throw InputError("order must be at least 1");
  if (options.probes < 1) throw InputError("at least one probe is required");
  const NormalizedOperator norm = normalize_for(k, options);
  const LinearOperator a = norm.base.scaled(-1.0).shifted(1.0);
  const ProbeSet probes = ProbeSet::gaussian(k.dimension(), options.probes, options.seed);
  const MomentObservations obs = estimate_power_moments(a, options.order, probes);
  return probabilistic_logdet(norm, obs, options);
}

}  // namespace bqlogdet
