#include "bqlogdet/special.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/digamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace bqlogdet {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;
constexpr double kLogSqrt2Pi = 0.91893853320467274178;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Upper-tail form for 0 <= lo < hi: Z = phi(lo) * d with d = M(lo) - e M(hi),
// e = phi(hi) / phi(lo).
struct TailForm {
  double e;
  double d;
};

TailForm upper_tail(double lo, double hi) {
  if (std::isinf(hi)) return {0.0, mills_ratio(lo)};
  const double e = std::exp(-0.5 * (hi - lo) * (hi + lo));
  return {e, mills_ratio(lo) - e * mills_ratio(hi)};
}

}  // namespace

double digamma(double x) { return boost::math::digamma(x); }

double euler_gamma() { return boost::math::constants::euler<double>(); }

double normal_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double mills_ratio(double t) {
  if (t < 5.0) {
    return 0.5 * std::erfc(t / std::sqrt(2.0)) / normal_pdf(t);
  }
  // Continued fraction 1/(t+ 1/(t+ 2/(t+ 3/(t+ ...)))), modified Lentz.
  const double tiny = 1e-300;
  double f = t;
  double c = t;
  double d = 0.0;
  for (int k = 1; k < 500; ++k) {
    d = t + k * d;
    if (std::abs(d) < tiny) d = tiny;
    c = t + k / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return 1.0 / f;
}

double log_normal_mass(double lo, double hi) {
  if (!(hi > lo)) return -kInf;
  if (hi <= 0.0) return log_normal_mass(-hi, -lo);
  if (lo >= 0.0) {
    const TailForm t = upper_tail(lo, hi);
    if (!(t.d > 0.0)) return -kInf;
    return -0.5 * lo * lo - kLogSqrt2Pi + std::log(t.d);
  }
  const double upper = std::isinf(hi) ? 0.0 : 0.5 * std::erfc(hi / std::sqrt(2.0));
  const double lower = std::isinf(lo) ? 0.0 : 0.5 * std::erfc(-lo / std::sqrt(2.0));
  return std::log1p(-(upper + lower));
}

StandardTruncatedMoments truncated_standard_normal(double lo, double hi) {
  StandardTruncatedMoments out;
  if (!(hi > lo)) {
    out.ok = false;
    return out;
  }
  if (std::isinf(lo) && std::isinf(hi)) return out;

  double sign = 1.0;
  if (hi <= 0.0) {
    const double t = lo;
    lo = -hi;
    hi = -t;
    sign = -1.0;
  }

  double first;   // (phi(lo) - phi(hi)) / Z
  double second;  // (lo phi(lo) - hi phi(hi)) / Z
  if (lo >= 0.0) {
    const TailForm t = upper_tail(lo, hi);
    if (!(t.d > 0.0) || !std::isfinite(t.d)) {
      out.ok = false;
      return out;
    }
    first = (1.0 - t.e) / t.d;
    second = (lo - (std::isinf(hi) ? 0.0 : hi * t.e)) / t.d;
  } else {
    const double mass = std::exp(log_normal_mass(lo, hi));
    const double plo = std::isinf(lo) ? 0.0 : normal_pdf(lo);
    const double phi = std::isinf(hi) ? 0.0 : normal_pdf(hi);
    first = (plo - phi) / mass;
    second = ((std::isinf(lo) ? 0.0 : lo * plo) - (std::isinf(hi) ? 0.0 : hi * phi)) / mass;
  }
  out.mean = sign * first;
  out.variance = 1.0 + second - first * first;
  // 1 + second - first^2 cancels badly deep in a tail; a variance that is tiny
  // next to the terms, or larger than any law on [lo, hi] allows, is noise.
  const double scale = std::max({1.0, std::abs(second), first * first});
  const double width = hi - lo;
  if (!std::isfinite(out.mean) || !std::isfinite(out.variance) || !(out.variance > 1e-10 * scale) ||
      out.variance > 1.0 + 1e-12 || (std::isfinite(width) && out.variance > 0.25 * width * width * (1.0 + 1e-9))) {
    out.ok = false;
  }
  return out;
}

}  // namespace bqlogdet
