#include "bqlogdet/experiments/benchmark.hpp"

#include "bqlogdet/errors.hpp"
#include "bqlogdet/exact.hpp"
#include "bqlogdet/expansions.hpp"
#include "bqlogdet/probes.hpp"
#include "bqlogdet/trace.hpp"

#include <chrono>
#include <cmath>

namespace bqlogdet {

const char* to_string(Method method) {
  switch (method) {
    case Method::bq:
      return "bq";
    case Method::taylor:
      return "taylor";
    case Method::chebyshev:
      return "chebyshev";
    case Method::slq:
      return "slq";
    case Method::exact:
      return "exact";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  for (Method m : {Method::bq, Method::taylor, Method::chebyshev, Method::slq, Method::exact}) {
    if (name == to_string(m)) return m;
  }
  throw InputError("unknown method '" + name + "'");
}

std::uint64_t cell_seed(std::uint64_t seed, std::size_t matrix_index) {
  return mix_seed(seed ^ (0x5851f42d4c957f2dULL * (matrix_index + 1)));
}

BenchmarkRecord run_method(const std::string& id, const LinearOperator& op, Method method, Index order,
                           Index probes, std::uint64_t seed, const BqOptions& bq) {
  BenchmarkRecord rec;
  rec.matrix_id = id;
  rec.method = method;
  rec.order = order;
  rec.probes = method == Method::exact ? 0 : probes;

  if (method == Method::exact) {
    rec.estimate = exact_logdet(op);
    return rec;
  }
  if (method == Method::bq) {
    BqOptions options = bq;
    options.order = order;
    options.probes = probes;
    options.seed = seed;
    const LogDetEstimate est = probabilistic_logdet(op, options);
    rec.estimate = est.value;
    rec.stddev = est.stddev;
    rec.mvp_count = est.mvp_count;
    return rec;
  }

  const NormalizedOperator norm = normalize_for(op, bq);
  const ProbeSet probe_set = ProbeSet::gaussian(op.dimension(), probes, seed);
  ExpansionEstimate est;
  if (method == Method::taylor) {
    const LinearOperator a = norm.base.scaled(-1.0).shifted(1.0);
    est = taylor_logdet(estimate_power_moments(a, order, probe_set), op.dimension(), norm.correction);
  } else if (method == Method::chebyshev) {
    est = chebyshev_logdet(norm, order, probe_set);
  } else {
    est = slq_logdet(norm, order, probe_set);
  }
  rec.estimate = est.denormalized_value;
  rec.sampling_error = est.standard_error;
  rec.mvp_count = est.mvp_count;
  return rec;
}

std::vector<BenchmarkRecord> run_benchmark(const std::vector<BenchmarkMatrix>& matrices,
                                           const BenchmarkOptions& options) {
  std::vector<BenchmarkRecord> records;
  for (std::size_t mi = 0; mi < matrices.size(); ++mi) {
    const BenchmarkMatrix& matrix = matrices[mi];
    std::optional<double> exact = matrix.exact;
    std::string exact_error;
    if (!exact && matrix.op.dimension() <= options.exact_limit) {
      try {
        exact = exact_logdet(matrix.op);
      } catch (const std::exception& e) {
        exact_error = e.what();
      }
    }
    const std::uint64_t seed = cell_seed(options.seed, mi);
    for (Method method : options.methods) {
      for (Index order : options.orders) {
        BenchmarkRecord rec;
        const auto start = std::chrono::steady_clock::now();
        try {
          rec = run_method(matrix.id, matrix.op, method, order, options.probes, seed, options.bq);
        } catch (const std::exception& e) {
          rec.matrix_id = matrix.id;
          rec.method = method;
          rec.order = order;
          rec.probes = options.probes;
          rec.estimate = std::nan("");
          rec.error = e.what();
        }
        const auto stop = std::chrono::steady_clock::now();
        if (options.record_time) rec.wall_time = std::chrono::duration<double>(stop - start).count();
        rec.exact = exact;
        if (exact) {
          rec.abs_error = std::abs(rec.estimate - *exact);
          rec.rel_error = *exact != 0.0 ? rec.abs_error / std::abs(*exact) : rec.abs_error;
        } else {
          rec.abs_error = std::nan("");
          rec.rel_error = std::nan("");
          if (rec.error.empty() && !exact_error.empty()) rec.error = "exact: " + exact_error;
        }
        records.push_back(std::move(rec));
      }
    }
  }
  return records;
}

}  // namespace bqlogdet
