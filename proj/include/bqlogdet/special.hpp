#pragma once

namespace bqlogdet {

double digamma(double x);
double euler_gamma();

double normal_pdf(double z);
double normal_cdf(double z);

/// Mills ratio (1 - Phi(t)) / phi(t), accurate for large t.
double mills_ratio(double t);

/// log(Phi(hi) - Phi(lo)) for standardized limits, stable in both tails.
/// Returns -inf when the mass is zero. Infinite limits are allowed.
double log_normal_mass(double lo, double hi);

struct StandardTruncatedMoments {
  double mean = 0.0;
  double variance = 1.0;
  bool ok = true;  ///< false when the mass underflowed
};

/// Mean and variance of N(0, 1) restricted to [lo, hi].
StandardTruncatedMoments truncated_standard_normal(double lo, double hi);

}  // namespace bqlogdet
