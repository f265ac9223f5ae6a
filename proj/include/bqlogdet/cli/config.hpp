#pragma once

#include "bqlogdet/experiments/benchmark.hpp"
#include "bqlogdet/probabilistic.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bqlogdet::cli {

struct KernelConfig {
  std::string family = "histogram";
  bool tune = true;
  int bins = 8;
  double signal_variance = 1.0;
  int degree = 2;
  double offset = 0.0;
};

/// Everything a run depends on. Echoed into JSON outputs; `--config` replays it.
struct RunConfig {
  std::string subcommand;

  std::vector<std::string> matrices;   ///< Matrix Market paths
  std::vector<std::string> synthetic;  ///< synthetic specs
  bool bundled = false;
  std::string data_dir;
  bool decay_profiles = false;
  Index profile_n = 1000;

  std::string method = "bq";
  std::vector<std::string> methods{"bq", "taylor", "chebyshev", "slq"};
  Index order = 25;
  std::vector<Index> orders;
  Index probes = 20;
  KernelConfig kernel;
  std::string bounds = "on";  ///< on | off | floor:<value>
  std::string noise = "probe-covariance";
  std::string prior = "interval";  ///< interval | unit
  std::optional<double> scale;
  std::optional<std::uint64_t> seed;
  Index replicates = 2;

  Index dim = 2;
  Index points_per_axis = 30;
  double lower = -1.0;
  double upper = 1.0;
  double true_lengthscale = 0.1;
  std::vector<double> candidates;
  Index samples = 5;
  std::string backend = "bq";

  std::string output = "-";
  std::string format;  ///< json | csv; empty picks the subcommand default
  bool timestamp = true;
};

nlohmann::ordered_json to_json(const RunConfig& config);
/// Throws InputError on unknown or mistyped fields.
RunConfig config_from_json(const nlohmann::json& j);

/// Estimator options implied by the config (order/probes/seed included).
BqOptions bq_options(const RunConfig& config);

/// Validates enumerations and ranges; throws InputError.
void validate(const RunConfig& config);

/// Output format after applying the subcommand default.
std::string effective_format(const RunConfig& config);

}  // namespace bqlogdet::cli
