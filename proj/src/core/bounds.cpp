#include "bqlogdet/bounds.hpp"

#include "bqlogdet/errors.hpp"

#include <cmath>
#include <string>

namespace bqlogdet {

namespace {

// Two-node rule with one node fixed at `fixed` matching the moments
// sum w = n, sum w x = mu1, sum w x^2 = mu2. Its free node is
// t = (fixed mu1 - mu2) / (fixed n - mu1). Since log is concave with a
// positive third derivative, fixing the node at the lower end of the
// spectrum gives a lower bound and at the upper end an upper bound.
double radau_bound(double fixed, double mu1, double mu2, double n) {
  const double shift = mu1 - n * fixed;                         // sum (l - fixed)
  const double spread = mu2 - 2.0 * fixed * mu1 + n * fixed * fixed;  // sum (l - fixed)^2
  const double scale = std::max({std::abs(mu1), std::abs(n * fixed), 1e-300});
  if (std::abs(shift) <= 1e-14 * scale || spread <= 0.0) {
    return n * std::log(fixed);
  }
  const double t = fixed + spread / shift;
  const double w_free = shift * shift / spread;
  const double w_fixed = n - w_free;
  return w_fixed * std::log(fixed) + w_free * std::log(t);
}

}  // namespace

LogDetBounds compute_bounds(double mu1, double mu2, double alpha, double beta, Index n) {
  if (!(alpha > 0.0)) {
    throw BoundsUnavailableError("bounds need a positive spectral lower bound, got " + std::to_string(alpha));
  }
  if (beta < alpha) throw InputError("spectral interval upper end is below its lower end");
  LogDetBounds b;
  b.mu1 = mu1;
  b.mu2 = mu2;
  b.alpha = alpha;
  b.beta = beta;
  b.n = n;
  const double nd = static_cast<double>(n);
  b.lower = radau_bound(alpha, mu1, mu2, nd);
  b.upper = radau_bound(beta, mu1, mu2, nd);
  return b;
}

LogDetBounds compute_bounds(const NormalizedOperator& k) {
  return compute_bounds(k.base.trace(), k.base.frobenius_squared(), k.interval.lower, k.interval.upper,
                        k.base.dimension());
}

}  // namespace bqlogdet
