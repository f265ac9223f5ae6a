#include "bqlogdet/kernels.hpp"

#include "bqlogdet/errors.hpp"
#include "bqlogdet/special.hpp"

#include <boost/math/special_functions/binomial.hpp>

#include <cmath>

namespace bqlogdet {

namespace {

// Integral of x^k over bin j of m: ((j+1)/m)^{k+1} - (j/m)^{k+1}, divided by k+1.
double bin_power_integral(int k, int j, int bins) {
  const double hi = static_cast<double>(j + 1) / bins;
  const double lo = static_cast<double>(j) / bins;
  return (std::pow(hi, k + 1) - std::pow(lo, k + 1)) / (k + 1);
}

double binomial(int d, int i) { return boost::math::binomial_coefficient<double>(d, i); }

// sum_k (1/k) / (k + i + 1) = (psi(i + 2) + gamma) / (i + 1).
double log_series_weight(int i) { return (digamma(i + 2.0) + euler_gamma()) / (i + 1.0); }

void check_bins(int bins) {
  if (bins < 1) throw InputError("histogram kernel needs at least one bin");
}

void check_poly(int degree, double offset) {
  if (degree < 1) throw InputError("polynomial kernel degree must be at least 1");
  if (offset < 0.0) throw InputError("polynomial kernel offset must be non-negative");
}

}  // namespace

double hist_S(double a) {
  if (a >= 1.0) return 1.0;
  if (a <= 0.0) return 0.0;
  return a + (1.0 - a) * std::log1p(-a);
}

double hist_k_obs_obs(int k, int kp, int bins) {
  check_bins(bins);
  double total = 0.0;
  for (int j = 0; j < bins; ++j) total += bin_power_integral(k, j, bins) * bin_power_integral(kp, j, bins);
  return total;
}

double hist_k_pred_obs(int kp, int bins) {
  check_bins(bins);
  double total = 0.0;
  for (int j = 0; j < bins; ++j) {
    const double ds = hist_S(static_cast<double>(j + 1) / bins) - hist_S(static_cast<double>(j) / bins);
    total += bin_power_integral(kp, j, bins) * ds;
  }
  return total;
}

double hist_k_pred_pred(int bins) {
  check_bins(bins);
  double total = 0.0;
  for (int j = 0; j < bins; ++j) {
    const double ds = hist_S(static_cast<double>(j + 1) / bins) - hist_S(static_cast<double>(j) / bins);
    total += ds * ds;
  }
  return total;
}

double poly_k_obs_obs(int k, int kp, int degree, double offset) {
  check_poly(degree, offset);
  double total = 0.0;
  for (int i = 0; i <= degree; ++i) {
    total += binomial(degree, i) * std::pow(offset, degree - i) / ((k + i + 1.0) * (kp + i + 1.0));
  }
  return total;
}

double poly_k_pred_obs(int kp, int degree, double offset) {
  check_poly(degree, offset);
  double total = 0.0;
  for (int i = 0; i <= degree; ++i) {
    total += binomial(degree, i) * std::pow(offset, degree - i) * log_series_weight(i) / (kp + i + 1.0);
  }
  return total;
}

double poly_k_pred_pred(int degree, double offset) {
  check_poly(degree, offset);
  double total = 0.0;
  for (int i = 0; i <= degree; ++i) {
    const double w = log_series_weight(i);
    total += binomial(degree, i) * std::pow(offset, degree - i) * w * w;
  }
  return total;
}

const char* to_string(KernelFamily family) {
  return family == KernelFamily::histogram ? "histogram" : "polynomial";
}

KernelFamily RawMomentKernel::family() const noexcept {
  return std::holds_alternative<HistogramKernel>(variant) ? KernelFamily::histogram : KernelFamily::polynomial;
}

double RawMomentKernel::obs_obs(int k, int kp) const {
  if (const auto* h = std::get_if<HistogramKernel>(&variant)) {
    return signal_variance * hist_k_obs_obs(k, kp, h->bins);
  }
  const auto& p = std::get<PolynomialKernel>(variant);
  return signal_variance * poly_k_obs_obs(k, kp, p.degree, p.offset);
}

double RawMomentKernel::pred_obs(int kp) const {
  if (const auto* h = std::get_if<HistogramKernel>(&variant)) {
    return signal_variance * hist_k_pred_obs(kp, h->bins);
  }
  const auto& p = std::get<PolynomialKernel>(variant);
  return signal_variance * poly_k_pred_obs(kp, p.degree, p.offset);
}

double RawMomentKernel::pred_pred() const {
  if (const auto* h = std::get_if<HistogramKernel>(&variant)) {
    return signal_variance * hist_k_pred_pred(h->bins);
  }
  const auto& p = std::get<PolynomialKernel>(variant);
  return signal_variance * poly_k_pred_pred(p.degree, p.offset);
}

DenseMatrix RawMomentKernel::gram(Index m) const {
  DenseMatrix g(m, m);
  for (Index a = 0; a < m; ++a) {
    for (Index b = a; b < m; ++b) {
      g(a, b) = obs_obs(static_cast<int>(a + 1), static_cast<int>(b + 1));
      g(b, a) = g(a, b);
    }
  }
  return g;
}

Vector RawMomentKernel::cross(Index m) const {
  Vector v(m);
  for (Index a = 0; a < m; ++a) v[a] = pred_obs(static_cast<int>(a + 1));
  return v;
}

}  // namespace bqlogdet
