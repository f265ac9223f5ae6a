#pragma once

#include "bqlogdet/experiments/benchmark.hpp"
#include "bqlogdet/operator.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bqlogdet {

struct LatticeSpec {
  Index dim = 2;
  Index points_per_axis = 30;
  double lower = -1.0;
  double upper = 1.0;
};

/// Regular grid, one point per column, first coordinate varying slowest.
DenseMatrix lattice_points(const LatticeSpec& lattice);

/// Squared-exponential L-ensemble kernel on the given points.
DenseMatrix dpp_kernel(const DenseMatrix& points, double lengthscale);

/// Exact spectral sampling from the L-ensemble DPP: keep eigenvector i with
/// probability lambda_i / (lambda_i + 1), then select points one at a time,
/// projecting the kept basis after each choice. Returned indices are sorted.
std::vector<Index> sample_dpp(const DenseMatrix& l, std::uint64_t seed);

struct DppExperiment {
  LatticeSpec lattice;
  double true_lengthscale = 0.1;
  std::vector<double> candidates;  ///< empty: true lengthscale times {1/2, 1/sqrt 2, 1, sqrt 2, 2}
  Index samples = 5;
  std::uint64_t seed = 0;
  Index order = 30;   ///< estimator order for non-exact backends
  Index probes = 10;  ///< estimator probes for non-exact backends
  BqOptions bq;       ///< kernel and bounds settings for the bq backend
};

struct DppCandidate {
  double lengthscale = 0.0;
  bool valid = true;
  std::string diagnostic;
  double data_term = 0.0;    ///< sum over samples of log det L_S
  double log_normalizer = 0.0;  ///< estimate of log det(L + I)
  double log_normalizer_stddev = 0.0;
  double nll = 0.0;          ///< samples * log_normalizer - data_term
  double nll_stddev = 0.0;
};

struct DppResult {
  std::vector<std::vector<Index>> samples;
  std::vector<DppCandidate> curve;
  Index argmin = -1;
  double argmin_lengthscale = 0.0;
  /// Probability that each candidate minimizes the NLL under the estimator's
  /// Gaussian uncertainty (Monte Carlo, seeded).
  std::vector<double> argmin_probability;
};

std::vector<double> candidate_grid(const DppExperiment& experiment);

/// Samples from the true-lengthscale DPP and evaluates the NLL curve, with
/// log det(L + I) supplied by `backend`. Candidates whose L_S is not positive
/// definite are kept in the curve, marked invalid, and excluded from the argmin.
DppResult dpp_lengthscale_selection(const DppExperiment& experiment, Method backend);

}  // namespace bqlogdet
