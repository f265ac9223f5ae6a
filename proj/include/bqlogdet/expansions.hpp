#pragma once

#include "bqlogdet/operator.hpp"
#include "bqlogdet/probes.hpp"
#include "bqlogdet/trace.hpp"

#include <cstdint>
#include <functional>

namespace bqlogdet {

enum class ExpansionMethod { taylor, chebyshev, slq };

const char* to_string(ExpansionMethod method);

struct ExpansionEstimate {
  ExpansionMethod method = ExpansionMethod::taylor;
  Index order = 0;
  Index probes = 0;
  std::uint64_t mvp_count = 0;
  double value = 0.0;              ///< logdet of the normalized matrix
  double denormalized_value = 0.0;  ///< value + correction
  double standard_error = 0.0;      ///< probe sampling error of value
};

/// -n sum_k y_k / k for K = I - A. The standard error uses the observation
/// noise covariance.
ExpansionEstimate taylor_logdet(const MomentObservations& obs, Index n, double correction = 0.0);

/// (psi(m + nu + 1.5) - psi(m)) / (nu + 1.5): expected truncation error of an
/// order-m Taylor series for a spectral density of smoothness nu, up to a constant.
double expected_taylor_error(double m, double nu);

/// Interpolation coefficients c_0..c_m of f((t + 1) / 2) at the m + 1
/// Chebyshev nodes on [-1, 1], c_0 halved.
Vector chebyshev_coefficients(Index degree, const std::function<double(double)>& f);

/// Tr f(K') through Chebyshev polynomials of 2K' - I, f = log by default.
ExpansionEstimate chebyshev_logdet(const NormalizedOperator& k, Index degree, const ProbeSet& probes,
                                   const std::function<double(double)>& f = {});

struct TridiagonalFactor {
  Vector diagonal;
  Vector off_diagonal;  ///< one shorter than diagonal
  Index steps = 0;
};

enum class Reorthogonalization { full, none };

/// m-step Lanczos from v. Stops early when an off-diagonal falls below
/// 1e-12 times the Frobenius norm of op.
TridiagonalFactor lanczos(const LinearOperator& op, const Eigen::Ref<const Vector>& v, Index steps,
                          Reorthogonalization reorth = Reorthogonalization::full);

ExpansionEstimate slq_logdet(const NormalizedOperator& k, Index steps, const ProbeSet& probes,
                             Reorthogonalization reorth = Reorthogonalization::full);

}  // namespace bqlogdet
