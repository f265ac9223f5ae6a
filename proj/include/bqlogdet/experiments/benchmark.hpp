#pragma once

#include "bqlogdet/operator.hpp"
#include "bqlogdet/probabilistic.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bqlogdet {

enum class Method { bq, taylor, chebyshev, slq, exact };

const char* to_string(Method method);
/// Throws InputError for unknown names.
Method parse_method(const std::string& name);

struct BenchmarkMatrix {
  std::string id;
  LinearOperator op;
  std::optional<double> exact;  ///< computed densely when absent and n <= exact_limit
};

struct BenchmarkOptions {
  std::vector<Method> methods{Method::bq, Method::taylor, Method::chebyshev, Method::slq};
  std::vector<Index> orders{5, 25, 50};
  Index probes = 20;
  std::uint64_t seed = 0;
  /// Kernel, bounds and noise settings for the bq method; order, probes and seed are set per cell.
  BqOptions bq;
  bool record_time = true;
  Index exact_limit = 5000;
};

struct BenchmarkRecord {
  std::string matrix_id;
  Method method = Method::bq;
  Index order = 0;
  Index probes = 0;
  std::uint64_t mvp_count = 0;
  double estimate = 0.0;
  std::optional<double> exact;
  double abs_error = 0.0;
  double rel_error = 0.0;
  std::optional<double> stddev;  ///< bq only
  std::optional<double> sampling_error;  ///< probe standard error of taylor, chebyshev and slq
  double wall_time = 0.0;        ///< seconds; 0 when timing is disabled
  std::string error;             ///< non-empty when the cell failed
};

/// Estimate of logdet(op) by one method. All methods draw the same probe set
/// from `seed`, so sweeps are paired across methods and orders.
BenchmarkRecord run_method(const std::string& id, const LinearOperator& op, Method method, Index order,
                           Index probes, std::uint64_t seed, const BqOptions& bq);

/// Full factorial sweep, records ordered by matrix, method, then order. A
/// failing cell is recorded with its error message and the sweep continues.
std::vector<BenchmarkRecord> run_benchmark(const std::vector<BenchmarkMatrix>& matrices,
                                           const BenchmarkOptions& options);

/// Probe seed used for the i-th matrix of a sweep.
std::uint64_t cell_seed(std::uint64_t seed, std::size_t matrix_index);

}  // namespace bqlogdet
