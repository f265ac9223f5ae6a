#pragma once

#include "bqlogdet/experiments/benchmark.hpp"

namespace bqlogdet {

struct CalibrationOptions {
  std::vector<Index> orders{5, 15, 30};
  Index probes = 20;
  std::vector<std::uint64_t> seeds{0, 1};
  BqOptions bq;
};

struct CalibrationRow {
  std::string matrix_id;
  Index order = 0;
  std::uint64_t seed = 0;
  double estimate = 0.0;
  double stddev = 0.0;
  double exact = 0.0;
  double abs_error = 0.0;
  double ratio = 0.0;  ///< abs_error / stddev; 0 when both vanish
};

struct CalibrationTable {
  std::vector<CalibrationRow> rows;
  Index within_two = 0;
  double fraction_within_two = 0.0;
};

/// BQ estimates over matrices x orders x seeds compared against exact values.
CalibrationTable calibration_study(const std::vector<BenchmarkMatrix>& matrices, const CalibrationOptions& options);

}  // namespace bqlogdet
