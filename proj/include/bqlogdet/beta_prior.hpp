#pragma once

#include "bqlogdet/operator.hpp"

namespace bqlogdet {

/// Prior mean for the eigenvalue density of the normalized K: eigenvalues are
/// modelled as lo + (1 - lo) X with X ~ Beta(alpha, beta), where lo is a known
/// lower bound of the spectrum (0 when none is known).
struct BetaPrior {
  double alpha = 1.0;
  double beta = 1.0;
  double support_lower = 0.0;
  double mu1 = 0.0;  ///< Tr(K')
  double mu2 = 0.0;  ///< ||K'||_F^2
  Index n = 0;
  bool fallback = false;  ///< moments unusable, uniform prior substituted
};

struct BetaParameters {
  double alpha = 1.0;
  double beta = 1.0;
  bool fallback = false;
};

/// Method-of-moments fit on [0, 1], clamped to [1e-3, 1e3]. Falls back to the
/// uniform distribution when the variance is not in (0, m(1 - m)).
/// Throws DegenerateSpectrumError when the mean lies outside [0, 1].
BetaParameters fit_beta_moments(double mean, double variance);

/// Fits the prior to mu1, mu2 of k.base. With use_interval the support starts
/// at the positive spectral lower bound of k; otherwise at 0.
BetaPrior fit_beta_prior(const NormalizedOperator& k, bool use_interval = true);

/// E[X^k] = prod_{j<k} (alpha + j) / (alpha + beta + j).
double beta_raw_moment(double alpha, double beta, int k);
double beta_raw_moment(const BetaPrior& prior, int k);

/// Prior k-th raw moment of the eigenvalues of A = I - K'.
double prior_residual_moment(const BetaPrior& prior, int k);

/// n E[log(lo + (1 - lo) X)]; equals n (psi(alpha) - psi(alpha + beta)) for lo = 0.
double beta_prior_logdet(const BetaPrior& prior, Index n);

}  // namespace bqlogdet
