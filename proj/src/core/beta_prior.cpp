#include "bqlogdet/beta_prior.hpp"

#include "bqlogdet/errors.hpp"
#include "bqlogdet/special.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace bqlogdet {

namespace {

constexpr double kMinParameter = 1e-3;
constexpr double kMaxParameter = 1e3;
constexpr double kMomentTolerance = 1e-12;

double integrate(const auto& f, double a, double b) {
  if (!(b > a)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-13);
}

// E[h(X)] for X ~ Beta(a, b). Endpoint singularities of the density are
// removed by x = t^(1/a) on [0, 1/2] and 1 - x = s^(1/b) on [1/2, 1].
template <typename H>
double beta_expectation(double a, double b, const H& h) {
  const double log_b = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  double left;
  if (a < 1.0) {
    left = integrate(
               [&](double t) {
                 const double x = std::pow(t, 1.0 / a);
                 return h(x) * std::exp((b - 1.0) * std::log1p(-x));
               },
               0.0, std::pow(0.5, a)) /
           a;
  } else {
    left = integrate(
        [&](double x) {
          if (x <= 0.0) return 0.0;
          return h(x) * std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x));
        },
        0.0, 0.5);
  }
  double right;
  if (b < 1.0) {
    right = integrate(
                [&](double s) {
                  const double y = std::pow(s, 1.0 / b);
                  return h(1.0 - y) * std::exp((a - 1.0) * std::log1p(-y));
                },
                0.0, std::pow(0.5, b)) /
            b;
  } else {
    right = integrate(
        [&](double x) {
          if (x >= 1.0) return 0.0;
          return h(x) * std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x));
        },
        0.5, 1.0);
  }
  return (left + right) * std::exp(-log_b);
}

}  // namespace

BetaParameters fit_beta_moments(double mean, double variance) {
  if (!(mean >= -kMomentTolerance && mean <= 1.0 + kMomentTolerance)) {
    throw DegenerateSpectrumError("spectral mean " + std::to_string(mean) + " lies outside [0, 1]");
  }
  BetaParameters p;
  const double cap = mean * (1.0 - mean);
  if (!(variance > 0.0) || variance >= cap) {
    p.fallback = true;
    return p;
  }
  const double common = cap / variance - 1.0;
  p.alpha = std::clamp(mean * common, kMinParameter, kMaxParameter);
  p.beta = std::clamp((1.0 - mean) * common, kMinParameter, kMaxParameter);
  return p;
}

BetaPrior fit_beta_prior(const NormalizedOperator& k, bool use_interval) {
  BetaPrior prior;
  prior.n = k.base.dimension();
  prior.mu1 = k.base.trace();
  prior.mu2 = k.base.frobenius_squared();
  if (prior.n < 1) throw DegenerateSpectrumError("empty operator");
  const double nd = static_cast<double>(prior.n);
  const double m1 = prior.mu1 / nd;
  const double var = prior.mu2 / nd - m1 * m1;
  if (!(m1 >= -kMomentTolerance && m1 <= 1.0 + kMomentTolerance)) {
    throw DegenerateSpectrumError("spectral mean " + std::to_string(m1) + " of the normalized operator lies outside [0, 1]");
  }

  const double lo = use_interval ? std::clamp(k.interval.lower, 0.0, 1.0) : 0.0;
  prior.support_lower = lo;
  const double width = 1.0 - lo;
  if (width < 1e-12) {
    prior.fallback = true;
    return prior;
  }
  const BetaParameters p = fit_beta_moments(std::clamp((m1 - lo) / width, 0.0, 1.0), var / (width * width));
  prior.alpha = p.alpha;
  prior.beta = p.beta;
  prior.fallback = p.fallback;
  return prior;
}

double beta_raw_moment(double alpha, double beta, int k) {
  double m = 1.0;
  for (int j = 0; j < k; ++j) m *= (alpha + j) / (alpha + beta + j);
  return m;
}

double beta_raw_moment(const BetaPrior& prior, int k) { return beta_raw_moment(prior.alpha, prior.beta, k); }

double prior_residual_moment(const BetaPrior& prior, int k) {
  // 1 - (lo + (1 - lo) X) = (1 - lo)(1 - X), and 1 - X ~ Beta(beta, alpha).
  return std::pow(1.0 - prior.support_lower, k) * beta_raw_moment(prior.beta, prior.alpha, k);
}

double beta_prior_logdet(const BetaPrior& prior, Index n) {
  const double nd = static_cast<double>(n);
  const double lo = prior.support_lower;
  if (lo <= 0.0) return nd * (digamma(prior.alpha) - digamma(prior.alpha + prior.beta));
  if (1.0 - lo < 1e-12) return nd * std::log(lo);
  const double width = 1.0 - lo;
  return nd * beta_expectation(prior.alpha, prior.beta, [&](double x) { return std::log(lo + width * x); });
}

}  // namespace bqlogdet
