#include "bqlogdet/cli/report.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace bqlogdet::cli {

namespace {

nlohmann::ordered_json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json optional_json(const std::optional<double>& v) {
  return v ? number_or_null(*v) : nlohmann::ordered_json(nullptr);
}

std::string optional_csv(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

// Quotes a CSV field when it contains a separator, quote or newline.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void write_records_csv(std::ostream& out, const std::vector<BenchmarkRecord>& records) {
  out << "matrix,method,order,probes,mvp_count,estimate,exact,abs_error,rel_error,stddev,wall_time,error\n";
  for (const auto& r : records) {
    out << csv_field(r.matrix_id) << ',' << to_string(r.method) << ',' << r.order << ',' << r.probes << ','
        << r.mvp_count << ',' << format_number(r.estimate) << ',' << optional_csv(r.exact) << ','
        << (r.exact ? format_number(r.abs_error) : "") << ',' << (r.exact ? format_number(r.rel_error) : "") << ','
        << optional_csv(r.stddev) << ',' << format_number(r.wall_time) << ',' << csv_field(r.error) << '\n';
  }
}

nlohmann::ordered_json records_json(const std::vector<BenchmarkRecord>& records) {
  nlohmann::ordered_json matrices = nlohmann::ordered_json::object();
  for (const auto& r : records) {
    nlohmann::ordered_json row;
    row["order"] = r.order;
    row["probes"] = r.probes;
    row["mvp_count"] = r.mvp_count;
    row["estimate"] = number_or_null(r.estimate);
    row["exact"] = optional_json(r.exact);
    row["abs_error"] = r.exact ? number_or_null(r.abs_error) : nlohmann::ordered_json(nullptr);
    row["rel_error"] = r.exact ? number_or_null(r.rel_error) : nlohmann::ordered_json(nullptr);
    row["stddev"] = optional_json(r.stddev);
    row["wall_time"] = r.wall_time;
    row["error"] = r.error.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.error);
    matrices[r.matrix_id][to_string(r.method)].push_back(row);
  }
  return matrices;
}

void write_calibration_csv(std::ostream& out, const CalibrationTable& table) {
  out << "matrix,order,seed,estimate,stddev,exact,abs_error,ratio\n";
  for (const auto& r : table.rows) {
    out << csv_field(r.matrix_id) << ',' << r.order << ',' << r.seed << ',' << format_number(r.estimate) << ','
        << format_number(r.stddev) << ',' << format_number(r.exact) << ',' << format_number(r.abs_error) << ','
        << format_number(r.ratio) << '\n';
  }
}

nlohmann::ordered_json calibration_json(const CalibrationTable& table) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : table.rows) {
    rows.push_back({{"matrix", r.matrix_id},
                    {"order", r.order},
                    {"seed", r.seed},
                    {"estimate", number_or_null(r.estimate)},
                    {"stddev", number_or_null(r.stddev)},
                    {"exact", number_or_null(r.exact)},
                    {"abs_error", number_or_null(r.abs_error)},
                    {"ratio", number_or_null(r.ratio)}});
  }
  nlohmann::ordered_json j;
  j["rows"] = rows;
  j["within_two"] = table.within_two;
  j["trials"] = table.rows.size();
  j["fraction_within_two"] = table.fraction_within_two;
  return j;
}

void write_dpp_csv(std::ostream& out, const DppResult& result) {
  out << "lengthscale,valid,data_term,log_normalizer,log_normalizer_stddev,nll,nll_stddev,argmin_probability,"
         "is_argmin,diagnostic\n";
  for (std::size_t i = 0; i < result.curve.size(); ++i) {
    const DppCandidate& c = result.curve[i];
    out << format_number(c.lengthscale) << ',' << (c.valid ? 1 : 0) << ',' << format_number(c.data_term) << ','
        << format_number(c.log_normalizer) << ',' << format_number(c.log_normalizer_stddev) << ','
        << format_number(c.nll) << ',' << format_number(c.nll_stddev) << ','
        << format_number(result.argmin_probability[i]) << ',' << (static_cast<Index>(i) == result.argmin ? 1 : 0)
        << ',' << csv_field(c.diagnostic) << '\n';
  }
}

nlohmann::ordered_json dpp_json(const DppResult& result) {
  nlohmann::ordered_json curve = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < result.curve.size(); ++i) {
    const DppCandidate& c = result.curve[i];
    curve.push_back({{"lengthscale", c.lengthscale},
                     {"valid", c.valid},
                     {"data_term", number_or_null(c.data_term)},
                     {"log_normalizer", number_or_null(c.log_normalizer)},
                     {"log_normalizer_stddev", number_or_null(c.log_normalizer_stddev)},
                     {"nll", number_or_null(c.nll)},
                     {"nll_stddev", number_or_null(c.nll_stddev)},
                     {"argmin_probability", result.argmin_probability[i]},
                     {"diagnostic", c.diagnostic}});
  }
  nlohmann::ordered_json sizes = nlohmann::ordered_json::array();
  for (const auto& s : result.samples) sizes.push_back(s.size());
  nlohmann::ordered_json j;
  j["curve"] = curve;
  j["argmin"] = result.argmin;
  j["argmin_lengthscale"] = result.argmin_lengthscale;
  j["sample_sizes"] = sizes;
  return j;
}

}  // namespace bqlogdet::cli
