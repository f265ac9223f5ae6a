#include "bqlogdet/experiments/calibration.hpp"

#include "bqlogdet/errors.hpp"
#include "bqlogdet/exact.hpp"

#include <cmath>
#include <limits>

namespace bqlogdet {

CalibrationTable calibration_study(const std::vector<BenchmarkMatrix>& matrices, const CalibrationOptions& options) {
  CalibrationTable table;
  for (std::size_t mi = 0; mi < matrices.size(); ++mi) {
    const BenchmarkMatrix& matrix = matrices[mi];
    const double exact = matrix.exact ? *matrix.exact : exact_logdet(matrix.op);
    for (Index order : options.orders) {
      for (std::uint64_t seed : options.seeds) {
        BqOptions bq = options.bq;
        bq.order = order;
        bq.probes = options.probes;
        bq.seed = cell_seed(seed, mi);
        const LogDetEstimate est = probabilistic_logdet(matrix.op, bq);

        CalibrationRow row;
        row.matrix_id = matrix.id;
        row.order = order;
        row.seed = seed;
        row.estimate = est.value;
        row.stddev = est.stddev;
        row.exact = exact;
        row.abs_error = std::abs(est.value - exact);
        if (row.abs_error == 0.0) {
          row.ratio = 0.0;
        } else {
          row.ratio = row.stddev > 0.0 ? row.abs_error / row.stddev : std::numeric_limits<double>::infinity();
        }
        if (row.ratio <= 2.0) ++table.within_two;
        table.rows.push_back(row);
      }
    }
  }
  if (!table.rows.empty()) {
    table.fraction_within_two = static_cast<double>(table.within_two) / static_cast<double>(table.rows.size());
  }
  return table;
}

}  // namespace bqlogdet
