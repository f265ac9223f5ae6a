#include "bqlogdet/cli/commands.hpp"

#include "bqlogdet/bounds.hpp"
#include "bqlogdet/cli/report.hpp"
#include "bqlogdet/errors.hpp"
#include "bqlogdet/experiments/calibration.hpp"
#include "bqlogdet/experiments/dpp.hpp"
#include "bqlogdet/experiments/synthetic.hpp"
#include "bqlogdet/experiments/test_matrices.hpp"
#include "bqlogdet/matrix_market.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#ifndef BQLOGDET_DEFAULT_DATA_DIR
#define BQLOGDET_DEFAULT_DATA_DIR "data"
#endif

namespace bqlogdet::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string single_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

ordered_json finite_or_null(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json kernel_json(const RawMomentKernel& k) {
  ordered_json j;
  j["family"] = to_string(k.family());
  if (const auto* h = std::get_if<HistogramKernel>(&k.variant)) {
    j["bins"] = h->bins;
  } else {
    const auto& p = std::get<PolynomialKernel>(k.variant);
    j["degree"] = p.degree;
    j["offset"] = p.offset;
  }
  j["signal_variance"] = k.signal_variance;
  return j;
}

void stamp(ordered_json& j, const RunConfig& config, double wall_time) {
  j["wall_time"] = config.timestamp ? ordered_json(wall_time) : ordered_json(nullptr);
  j["timestamp"] = config.timestamp ? ordered_json(utc_timestamp()) : ordered_json(nullptr);
  j["config"] = to_json(config);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void run_estimate(const RunConfig& config, std::ostream& out) {
  const std::vector<BenchmarkMatrix> matrices = collect_matrices(config);
  const BenchmarkMatrix& matrix = matrices.front();
  const BqOptions options = bq_options(config);
  const Method method = parse_method(config.method);
  const auto start = std::chrono::steady_clock::now();

  ordered_json j;
  j["command"] = "estimate";
  j["matrix"] = matrix.id;
  j["n"] = matrix.op.dimension();
  j["method"] = to_string(method);
  ordered_json details;
  if (method == Method::bq) {
    const LogDetEstimate est = probabilistic_logdet(matrix.op, options);
    j["value"] = finite_or_null(est.value);
    j["stddev"] = finite_or_null(est.stddev);
    j["bounds"] = est.bounds ? ordered_json{{"lower", est.bounds->lower + est.correction},
                                            {"upper", est.bounds->upper + est.correction}}
                             : ordered_json(nullptr);
    j["mvp_count"] = est.mvp_count;
    details["gp_mean"] = est.gp_mean + est.correction;
    details["gp_stddev"] = std::sqrt(est.gp_variance);
    details["correction"] = est.correction;
    details["truncated"] = est.truncated;
    details["truncation_underflow"] = est.truncation_underflow;
    details["tuning_fallback"] = est.tuning_fallback;
    details["kernel"] = kernel_json(est.kernel);
    details["prior"] = {{"alpha", est.prior.alpha},
                        {"beta", est.prior.beta},
                        {"support_lower", est.prior.support_lower},
                        {"fallback", est.prior.fallback}};
    details["jitter"] = est.jitter;
  } else {
    const BenchmarkRecord rec =
        run_method(matrix.id, matrix.op, method, config.order, config.probes, options.seed, options);
    j["value"] = finite_or_null(rec.estimate);
    j["stddev"] = rec.sampling_error ? finite_or_null(*rec.sampling_error) : ordered_json(0.0);
    const NormalizedOperator norm = normalize_for(matrix.op, options);
    if (norm.interval.lower > 0.0) {
      const LogDetBounds b = compute_bounds(norm);
      j["bounds"] = {{"lower", b.lower + norm.correction}, {"upper", b.upper + norm.correction}};
    } else {
      j["bounds"] = nullptr;
    }
    j["mvp_count"] = rec.mvp_count;
    details["correction"] = norm.correction;
  }
  j["details"] = details;
  stamp(j, config, seconds_since(start));
  out << j.dump(2) << '\n';
}

void run_bench(const RunConfig& config, std::ostream& out) {
  BenchmarkOptions options;
  options.methods.clear();
  for (const auto& m : config.methods) options.methods.push_back(parse_method(m));
  options.orders = config.orders.empty() ? std::vector<Index>{5, 25, 50} : config.orders;
  options.probes = config.probes;
  options.seed = *config.seed;
  options.bq = bq_options(config);
  options.record_time = config.timestamp;
  const auto start = std::chrono::steady_clock::now();
  const std::vector<BenchmarkRecord> records = run_benchmark(collect_matrices(config), options);
  if (effective_format(config) == "csv") {
    write_records_csv(out, records);
    return;
  }
  ordered_json j;
  j["command"] = "bench";
  j["records"] = records_json(records);
  stamp(j, config, seconds_since(start));
  out << j.dump(2) << '\n';
}

void run_calibrate(const RunConfig& config, std::ostream& out) {
  CalibrationOptions options;
  options.orders = config.orders.empty() ? std::vector<Index>{5, 15, 30} : config.orders;
  options.probes = config.probes;
  options.seeds.clear();
  for (Index r = 0; r < config.replicates; ++r) options.seeds.push_back(*config.seed + static_cast<std::uint64_t>(r));
  options.bq = bq_options(config);
  const auto start = std::chrono::steady_clock::now();
  const CalibrationTable table = calibration_study(collect_matrices(config), options);
  if (effective_format(config) == "csv") {
    write_calibration_csv(out, table);
    return;
  }
  ordered_json j;
  j["command"] = "calibrate";
  const ordered_json body = calibration_json(table);
  for (const auto& [key, value] : body.items()) j[key] = value;
  stamp(j, config, seconds_since(start));
  out << j.dump(2) << '\n';
}

void run_dpp(const RunConfig& config, std::ostream& out) {
  DppExperiment e;
  e.lattice.dim = config.dim;
  e.lattice.points_per_axis = config.points_per_axis;
  e.lattice.lower = config.lower;
  e.lattice.upper = config.upper;
  e.true_lengthscale = config.true_lengthscale;
  e.candidates = config.candidates;
  e.samples = config.samples;
  e.seed = *config.seed;
  e.order = config.order;
  e.probes = config.probes;
  e.bq = bq_options(config);
  Index total = 1;
  for (Index d = 0; d < e.lattice.dim; ++d) total *= e.lattice.points_per_axis;
  if (total > 2500) throw InputError("lattice has " + std::to_string(total) + " points; at most 2500 are supported");
  const auto start = std::chrono::steady_clock::now();
  const DppResult result = dpp_lengthscale_selection(e, parse_method(config.backend));
  if (effective_format(config) == "csv") {
    write_dpp_csv(out, result);
    return;
  }
  ordered_json j;
  j["command"] = "dpp";
  const ordered_json body = dpp_json(result);
  for (const auto& [key, value] : body.items()) j[key] = value;
  stamp(j, config, seconds_since(start));
  out << j.dump(2) << '\n';
}

void add_common(CLI::App* app, RunConfig& c, std::string& config_path) {
  app->add_option("--seed", c.seed, "Random seed (required)");
  app->add_option("-o,--output", c.output, "Output path, - for stdout");
  app->add_option("--format", c.format, "json or csv");
  app->add_flag("!--no-timestamp", c.timestamp, "Omit timestamp and wall-time fields");
  app->add_option("--config", config_path, "Replay a config echoed in a previous JSON output");
}

void add_sources(CLI::App* app, RunConfig& c) {
  app->add_option("--matrix", c.matrices, "Matrix Market file (symmetric, assumed PSD)");
  app->add_option("--synthetic", c.synthetic, "Synthetic spec, e.g. gaussian:n=500,l=0.1");
  app->add_flag("--bundled", c.bundled, "Include the bundled sparse matrices");
  app->add_option("--data-dir", c.data_dir, "Directory holding the bundled matrices");
  app->add_flag("--decay-profiles", c.decay_profiles, "Include six synthetic decay profiles");
  app->add_option("--profile-n", c.profile_n, "Size of the decay-profile matrices");
}

void add_estimator(CLI::App* app, RunConfig& c) {
  app->add_option("--probes", c.probes, "Number of Gaussian probes");
  app->add_option("--kernel", c.kernel.family, "histogram or polynomial");
  app->add_flag("--tune,!--no-tune", c.kernel.tune, "Tune kernel hyperparameters on a grid");
  app->add_option("--bins", c.kernel.bins, "Histogram bins when not tuning");
  app->add_option("--signal-variance", c.kernel.signal_variance, "Signal variance when not tuning");
  app->add_option("--degree", c.kernel.degree, "Polynomial degree when not tuning");
  app->add_option("--offset", c.kernel.offset, "Polynomial offset when not tuning");
  app->add_option("--bounds", c.bounds, "on, off, or floor:<lower spectral bound>");
  app->add_option("--noise", c.noise, "probe-covariance or diagonal");
  app->add_option("--prior", c.prior, "interval or unit");
  app->add_option("--scale", c.scale, "Normalization scale replacing the Gershgorin bound");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config '" + path + "'");
  try {
    return config_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("config '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

std::string default_data_dir() {
  if (const char* env = std::getenv("BQLOGDET_DATA_DIR")) return env;
  return BQLOGDET_DEFAULT_DATA_DIR;
}

std::vector<BenchmarkMatrix> collect_matrices(const RunConfig& config) {
  std::vector<BenchmarkMatrix> out;
  const std::uint64_t seed = config.seed.value_or(0);
  for (const auto& path : config.matrices) {
    out.push_back({std::filesystem::path(path).stem().string(), load_matrix_market(path, true), std::nullopt});
  }
  for (const auto& text : config.synthetic) {
    const SyntheticSpec spec = parse_synthetic(text, seed);
    out.push_back({to_string(spec), generate_synthetic(spec), std::nullopt});
  }
  if (config.bundled) {
    const std::string dir = config.data_dir.empty() ? default_data_dir() : config.data_dir;
    if (!std::filesystem::is_directory(dir)) throw InputError("bundled data directory '" + dir + "' not found");
    for (auto& m : load_bundled_matrices(dir)) out.push_back({m.id, m.op, std::nullopt});
  }
  if (config.decay_profiles) {
    for (const auto& spec : decay_profiles(config.profile_n, seed)) {
      out.push_back({spec.label, generate_synthetic(spec), std::nullopt});
    }
  }
  if (out.empty()) throw InputError("no matrices given (use --matrix, --synthetic, --bundled or --decay-profiles)");
  return out;
}

void execute(const RunConfig& config, std::ostream& out) {
  validate(config);
  std::ofstream file;
  std::ostringstream buffer;
  if (config.subcommand == "estimate") {
    run_estimate(config, buffer);
  } else if (config.subcommand == "bench") {
    run_bench(config, buffer);
  } else if (config.subcommand == "calibrate") {
    run_calibrate(config, buffer);
  } else {
    run_dpp(config, buffer);
  }
  if (config.output == "-") {
    out << buffer.str();
    out.flush();
    return;
  }
  file.open(config.output, std::ios::binary);
  if (!file) throw InputError("cannot write output file '" + config.output + "'");
  file << buffer.str();
  if (!file) throw InputError("failed writing output file '" + config.output + "'");
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Log-determinant estimation with calibrated uncertainty"};
  app.name("bqlogdet");
  app.require_subcommand(1);

  RunConfig c;
  std::string config_path;
  std::string methods_list;
  std::string orders_list;
  std::string candidates_list;

  CLI::App* estimate = app.add_subcommand("estimate", "Estimate one log-determinant (JSON)");
  add_common(estimate, c, config_path);
  add_sources(estimate, c);
  add_estimator(estimate, c);
  estimate->add_option("--method", c.method, "bq, taylor, chebyshev, slq or exact");
  CLI::Option* estimate_order = estimate->add_option("--order", c.order, "Moment order, degree or Lanczos steps");

  CLI::App* bench = app.add_subcommand("bench", "Sweep methods x orders over matrices (CSV)");
  add_common(bench, c, config_path);
  add_sources(bench, c);
  add_estimator(bench, c);
  bench->add_option("--methods", methods_list, "Comma-separated methods");
  bench->add_option("--orders", orders_list, "Comma-separated orders");

  CLI::App* calibrate = app.add_subcommand("calibrate", "Error-to-stddev ratios of BQ estimates (CSV)");
  add_common(calibrate, c, config_path);
  add_sources(calibrate, c);
  add_estimator(calibrate, c);
  calibrate->add_option("--orders", orders_list, "Comma-separated orders");
  calibrate->add_option("--replicates", c.replicates, "Seeds per cell: seed, seed+1, ...");

  CLI::App* dpp = app.add_subcommand("dpp", "DPP lengthscale selection curve (CSV)");
  add_common(dpp, c, config_path);
  add_estimator(dpp, c);
  dpp->add_option("--backend", c.backend, "Log-determinant method for log det(L + I)");
  CLI::Option* dpp_order = dpp->add_option("--order", c.order, "Estimator order");
  CLI::Option* dpp_probes = dpp->get_option("--probes");
  dpp->add_option("--dim", c.dim, "Lattice dimension");
  dpp->add_option("--points-per-axis", c.points_per_axis, "Lattice points per axis");
  dpp->add_option("--lower", c.lower, "Lattice lower coordinate");
  dpp->add_option("--upper", c.upper, "Lattice upper coordinate");
  dpp->add_option("--true-lengthscale", c.true_lengthscale, "Lengthscale of the sampled DPP");
  dpp->add_option("--candidates", candidates_list, "Comma-separated candidate lengthscales");
  dpp->add_option("--samples", c.samples, "Number of DPP samples");

  try {
    app.parse(argc, argv);
    CLI::App* chosen = app.get_subcommands().front();
    c.subcommand = chosen->get_name();
    if (!methods_list.empty()) c.methods = split_list(methods_list);
    for (const auto& s : split_list(orders_list)) c.orders.push_back(static_cast<Index>(std::stol(s)));
    for (const auto& s : split_list(candidates_list)) c.candidates.push_back(std::stod(s));
    if (chosen == dpp) {
      if (dpp_order->count() == 0) c.order = 30;
      if (dpp_probes->count() == 0) c.probes = 10;
    }
    (void)estimate_order;
    if (!config_path.empty()) {
      RunConfig loaded = load_config(config_path);
      if (loaded.subcommand != c.subcommand) {
        throw InputError("config is for '" + loaded.subcommand + "', not '" + c.subcommand + "'");
      }
      loaded.output = c.output;
      loaded.timestamp = c.timestamp;
      if (!c.format.empty()) loaded.format = c.format;
      c = loaded;
    }
    execute(c, out);
    return exit_success;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_success;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_success;
  } catch (const CLI::ParseError& e) {
    err << "error: input: " << single_line(e.what()) << '\n';
    return exit_input_error;
  } catch (const InputError& e) {
    err << "error: input: " << single_line(e.what()) << '\n';
    return exit_input_error;
  } catch (const std::invalid_argument& e) {
    err << "error: input: " << single_line(e.what()) << '\n';
    return exit_input_error;
  } catch (const std::out_of_range& e) {
    err << "error: input: " << single_line(e.what()) << '\n';
    return exit_input_error;
  } catch (const NumericalError& e) {
    err << "error: numerical: " << single_line(e.what()) << '\n';
    return exit_numerical_error;
  } catch (const std::exception& e) {
    err << "error: numerical: " << single_line(e.what()) << '\n';
    return exit_numerical_error;
  }
}

}  // namespace bqlogdet::cli
