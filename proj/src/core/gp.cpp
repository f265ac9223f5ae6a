#include "bqlogdet/gp.hpp"

#include "bqlogdet/errors.hpp"
#include "bqlogdet/special.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <limits>
#include <numbers>

namespace bqlogdet {

namespace {

constexpr double kMinVariance = 1e-300;

struct Residuals {
  Vector values;
  double prior_logdet = 0.0;
};

Residuals residuals(const MomentObservations& obs, const BetaPrior& prior) {
  Residuals r;
  r.values.resize(obs.order);
  for (Index k = 0; k < obs.order; ++k) {
    r.values[k] = obs.values[k] - prior_residual_moment(prior, static_cast<int>(k + 1));
  }
  r.prior_logdet = beta_prior_logdet(prior, obs.dimension);
  return r;
}

// Posterior for one kernel, given kernel quantities already scaled by the
// signal variance.
GpPrediction predict(const DenseMatrix& gram, const Vector& cross, double pred_var, const DenseMatrix& noise,
                     const Residuals& res, Index n) {
  const Index m = gram.rows();
  const DenseMatrix c = gram + noise;
  const double mean_diag = std::max(c.diagonal().mean(), std::numeric_limits<double>::min());

  Eigen::LLT<DenseMatrix> llt;
  double jitter = 0.0;
  for (double level : {0.0, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6}) {
    jitter = level;
    DenseMatrix cj = c;
    cj.diagonal().array() += level * mean_diag;
    llt.compute(cj);
    if (llt.info() == Eigen::Success && llt.rcond() > 1e-13) break;
    if (level == 1e-6) {
      if (llt.info() != Eigen::Success) throw SingularGramError("Gram matrix is singular after jitter escalation");
    }
  }

  const Vector alpha = llt.solve(res.values);
  const Vector v = llt.matrixL().solve(cross);
  const double nd = static_cast<double>(n);

  GpPrediction p;
  p.jitter = jitter;
  p.mean = res.prior_logdet - nd * cross.dot(alpha);
  p.variance = std::max(nd * nd * (pred_var - v.squaredNorm()), kMinVariance);
  const double log_det = 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  p.log_marginal_likelihood = -0.5 * res.values.dot(alpha) - 0.5 * log_det -
                              0.5 * static_cast<double>(m) * std::log(2.0 * std::numbers::pi);
  return p;
}

}  // namespace

const char* to_string(NoiseModel model) {
  return model == NoiseModel::probe_covariance ? "probe-covariance" : "diagonal";
}

DenseMatrix observation_noise(const MomentObservations& obs, NoiseModel model) {
  if (model == NoiseModel::probe_covariance && obs.noise_covariance.rows() == obs.order) {
    return obs.noise_covariance;
  }
  return obs.noise.asDiagonal();
}

GpPrediction gp_posterior(const MomentObservations& obs, const RawMomentKernel& kernel, const BetaPrior& prior,
                          NoiseModel noise) {
  if (obs.order < 1) throw InputError("gp_posterior needs at least one observation");
  const Residuals res = residuals(obs, prior);
  return predict(kernel.gram(obs.order), kernel.cross(obs.order), kernel.pred_pred(), observation_noise(obs, noise),
                 res, obs.dimension);
}

double bounded_log_likelihood(const GpPrediction& prediction, const LogDetBounds& bounds) {
  const double sd = std::sqrt(prediction.variance);
  return prediction.log_marginal_likelihood +
         log_normal_mass((bounds.lower - prediction.mean) / sd, (bounds.upper - prediction.mean) / sd);
}

std::vector<double> signal_variance_grid() {
  std::vector<double> grid;
  for (int i = 0; i < 25; ++i) grid.push_back(std::pow(10.0, -4.0 + 6.0 * i / 24.0));
  return grid;
}

std::vector<RawMomentKernel> kernel_shape_grid(KernelFamily family) {
  std::vector<RawMomentKernel> shapes;
  if (family == KernelFamily::histogram) {
    for (int bins : {1, 2, 4, 8, 16, 32}) shapes.push_back({HistogramKernel{bins}, 1.0});
  } else {
    for (int degree : {1, 2, 3}) {
      for (double offset : {0.0, 0.1, 1.0}) shapes.push_back({PolynomialKernel{degree, offset}, 1.0});
    }
  }
  return shapes;
}

TuningResult tune_hyperparameters(const MomentObservations& obs, KernelFamily family, const BetaPrior& prior,
                                  const std::optional<LogDetBounds>& bounds, NoiseModel noise) {
  if (obs.order < 1) throw InputError("tuning needs at least one observation");
  const Residuals res = residuals(obs, prior);
  const DenseMatrix noise_matrix = observation_noise(obs, noise);
  const double neg_inf = -std::numeric_limits<double>::infinity();

  TuningResult best;
  best.objective = neg_inf;
  TuningResult best_plain;
  best_plain.objective = neg_inf;
  bool any = false;

  for (const RawMomentKernel& shape : kernel_shape_grid(family)) {
    const DenseMatrix gram = shape.gram(obs.order);
    const Vector cross = shape.cross(obs.order);
    const double pred_var = shape.pred_pred();
    for (double sf : signal_variance_grid()) {
      GpPrediction p;
      try {
        p = predict(sf * gram, sf * cross, sf * pred_var, noise_matrix, res, obs.dimension);
      } catch (const SingularGramError&) {
        continue;
      }
      any = true;
      RawMomentKernel kernel = shape;
      kernel.signal_variance = sf;
      if (p.log_marginal_likelihood > best_plain.objective) best_plain = {kernel, p, p.log_marginal_likelihood, false};
      const double objective = bounds ? bounded_log_likelihood(p, *bounds) : p.log_marginal_likelihood;
      if (objective > best.objective) best = {kernel, p, objective, false};
    }
  }
  if (!any) throw SingularGramError("every hyperparameter candidate produced a singular Gram matrix");
  if (best.objective == neg_inf) {
    best_plain.fallback = true;
    return best_plain;
  }
  return best;
}

TruncatedPosterior truncate_posterior(double mean, double variance, double lower, double upper) {
  if (upper < lower) throw InputError("truncation interval is empty");
  TruncatedPosterior out{mean, variance, false};
  if (upper == lower) {
    out.mean = lower;
    out.variance = 0.0;
    return out;
  }
  if (!(variance > 0.0)) {
    out.mean = std::clamp(mean, lower, upper);
    out.variance = 0.0;
    return out;
  }
  const double sd = std::sqrt(variance);
  const StandardTruncatedMoments z = truncated_standard_normal((lower - mean) / sd, (upper - mean) / sd);
  if (!z.ok) {
    out.underflow = true;
    out.mean = std::clamp(mean, lower, upper);
    const double width = upper - lower;
    out.variance = std::isfinite(width) ? std::min(variance, width * width / 144.0) : variance;
    return out;
  }
  out.mean = std::clamp(mean + sd * z.mean, lower, upper);
  out.variance = std::min(variance * z.variance, variance);
  return out;
}

}  // namespace bqlogdet
