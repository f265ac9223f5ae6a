#pragma once

#include "bqlogdet/experiments/benchmark.hpp"
#include "bqlogdet/experiments/calibration.hpp"
#include "bqlogdet/experiments/dpp.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace bqlogdet::cli {

/// Shortest round-trip decimal form; "nan", "inf" and "-inf" for non-finite values.
std::string format_number(double v);

/// Header: matrix,method,order,probes,mvp_count,estimate,exact,abs_error,rel_error,stddev,wall_time,error
void write_records_csv(std::ostream& out, const std::vector<BenchmarkRecord>& records);
/// Nested matrix -> method -> list of per-order records.
nlohmann::ordered_json records_json(const std::vector<BenchmarkRecord>& records);

/// Header: matrix,order,seed,estimate,stddev,exact,abs_error,ratio
void write_calibration_csv(std::ostream& out, const CalibrationTable& table);
nlohmann::ordered_json calibration_json(const CalibrationTable& table);

/// Header: lengthscale,valid,data_term,log_normalizer,log_normalizer_stddev,nll,nll_stddev,argmin_probability,is_argmin,diagnostic
void write_dpp_csv(std::ostream& out, const DppResult& result);
nlohmann::ordered_json dpp_json(const DppResult& result);

}  // namespace bqlogdet::cli
