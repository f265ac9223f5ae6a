#pragma once

#include "bqlogdet/operator.hpp"

#include <variant>

namespace bqlogdet {

/// S(a) = a + (1 - a) log(1 - a) = integral_0^a -log(1 - x) dx, S(1) = 1.
double hist_S(double a);

/// Covariance of raw moments k, k' under the m_b-bin histogram kernel.
double hist_k_obs_obs(int k, int kp, int bins);
/// Covariance between the log-series functional sum_k R_k / k and raw moment k'.
double hist_k_pred_obs(int kp, int bins);
/// Variance of the log-series functional.
double hist_k_pred_pred(int bins);

/// Same three quantities for the polynomial kernel (x x' + c)^d.
double poly_k_obs_obs(int k, int kp, int degree, double offset);
double poly_k_pred_obs(int kp, int degree, double offset);
double poly_k_pred_pred(int degree, double offset);

struct HistogramKernel {
  int bins = 8;
};

struct PolynomialKernel {
  int degree = 2;
  double offset = 0.0;
};

enum class KernelFamily { histogram, polynomial };

const char* to_string(KernelFamily family);

/// Kernel over moment indices: closed-form covariances of the raw moments of
/// a GP-distributed eigenvalue density, scaled by the signal variance.
struct RawMomentKernel {
  std::variant<HistogramKernel, PolynomialKernel> variant = HistogramKernel{};
  double signal_variance = 1.0;

  KernelFamily family() const noexcept;
  double obs_obs(int k, int kp) const;
  double pred_obs(int kp) const;
  double pred_pred() const;

  /// Gram matrix over orders 1..m.
  DenseMatrix gram(Index m) const;
  /// Cross-covariances pred_obs(k) for k = 1..m.
  Vector cross(Index m) const;
};

}  // namespace bqlogdet
