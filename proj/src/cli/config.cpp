#include "bqlogdet/cli/config.hpp"

#include "bqlogdet/errors.hpp"

#include <charconv>

namespace bqlogdet::cli {

namespace {

template <typename T>
void read(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config field '") + key + "': " + e.what());
  }
}

template <typename T>
void read_optional(const nlohmann::json& j, const char* key, std::optional<T>& out) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  T value{};
  read(j, key, value);
  out = value;
}

double parse_floor(const std::string& bounds) {
  const std::string text = bounds.substr(6);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !(v > 0.0)) {
    throw InputError("--bounds floor:<value> needs a positive number, got '" + text + "'");
  }
  return v;
}

}  // namespace

nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["subcommand"] = c.subcommand;
  j["matrices"] = c.matrices;
  j["synthetic"] = c.synthetic;
  j["bundled"] = c.bundled;
  j["data_dir"] = c.data_dir;
  j["decay_profiles"] = c.decay_profiles;
  j["profile_n"] = c.profile_n;
  j["method"] = c.method;
  j["methods"] = c.methods;
  j["order"] = c.order;
  j["orders"] = c.orders;
  j["probes"] = c.probes;
  j["kernel"] = {{"family", c.kernel.family},
                 {"tune", c.kernel.tune},
                 {"bins", c.kernel.bins},
                 {"signal_variance", c.kernel.signal_variance},
                 {"degree", c.kernel.degree},
                 {"offset", c.kernel.offset}};
  j["bounds"] = c.bounds;
  j["noise"] = c.noise;
  j["prior"] = c.prior;
  j["scale"] = c.scale ? nlohmann::ordered_json(*c.scale) : nlohmann::ordered_json(nullptr);
  j["seed"] = c.seed ? nlohmann::ordered_json(*c.seed) : nlohmann::ordered_json(nullptr);
  j["replicates"] = c.replicates;
  j["dim"] = c.dim;
  j["points_per_axis"] = c.points_per_axis;
  j["lower"] = c.lower;
  j["upper"] = c.upper;
  j["true_lengthscale"] = c.true_lengthscale;
  j["candidates"] = c.candidates;
  j["samples"] = c.samples;
  j["backend"] = c.backend;
  j["format"] = effective_format(c);
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  const nlohmann::json& src = j.contains("config") ? j.at("config") : j;
  RunConfig c;
  read(src, "subcommand", c.subcommand);
  read(src, "matrices", c.matrices);
  read(src, "synthetic", c.synthetic);
  read(src, "bundled", c.bundled);
  read(src, "data_dir", c.data_dir);
  read(src, "decay_profiles", c.decay_profiles);
  read(src, "profile_n", c.profile_n);
  read(src, "method", c.method);
  read(src, "methods", c.methods);
  read(src, "order", c.order);
  read(src, "orders", c.orders);
  read(src, "probes", c.probes);
  if (src.contains("kernel")) {
    const auto& k = src.at("kernel");
    read(k, "family", c.kernel.family);
    read(k, "tune", c.kernel.tune);
    read(k, "bins", c.kernel.bins);
    read(k, "signal_variance", c.kernel.signal_variance);
    read(k, "degree", c.kernel.degree);
    read(k, "offset", c.kernel.offset);
  }
  read(src, "bounds", c.bounds);
  read(src, "noise", c.noise);
  read(src, "prior", c.prior);
  read_optional(src, "scale", c.scale);
  read_optional(src, "seed", c.seed);
  read(src, "replicates", c.replicates);
  read(src, "dim", c.dim);
  read(src, "points_per_axis", c.points_per_axis);
  read(src, "lower", c.lower);
  read(src, "upper", c.upper);
  read(src, "true_lengthscale", c.true_lengthscale);
  read(src, "candidates", c.candidates);
  read(src, "samples", c.samples);
  read(src, "backend", c.backend);
  read(src, "format", c.format);
  return c;
}

BqOptions bq_options(const RunConfig& c) {
  BqOptions o;
  o.order = c.order;
  o.probes = c.probes;
  o.seed = c.seed.value_or(0);
  o.family = c.kernel.family == "polynomial" ? KernelFamily::polynomial : KernelFamily::histogram;
  o.tune = c.kernel.tune;
  if (o.family == KernelFamily::histogram) {
    o.kernel = {HistogramKernel{c.kernel.bins}, c.kernel.signal_variance};
  } else {
    o.kernel = {PolynomialKernel{c.kernel.degree, c.kernel.offset}, c.kernel.signal_variance};
  }
  if (c.bounds == "off") {
    o.bounds = BoundsMode::off;
  } else if (c.bounds.rfind("floor:", 0) == 0) {
    o.floor = parse_floor(c.bounds);
  }
  o.scale = c.scale;
  o.noise = c.noise == "diagonal" ? NoiseModel::diagonal : NoiseModel::probe_covariance;
  o.interval_prior = c.prior != "unit";
  return o;
}

void validate(const RunConfig& c) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw InputError(what);
  };
  require(c.subcommand == "estimate" || c.subcommand == "bench" || c.subcommand == "calibrate" || c.subcommand == "dpp",
          "unknown subcommand '" + c.subcommand + "'");
  require(c.seed.has_value(), "a seed is required (--seed)");
  require(c.order >= 1, "order must be at least 1");
  for (Index m : c.orders) require(m >= 1, "orders must be at least 1");
  require(c.probes >= 1, "probes must be at least 1");
  require(c.kernel.family == "histogram" || c.kernel.family == "polynomial",
          "kernel must be histogram or polynomial, got '" + c.kernel.family + "'");
  require(c.kernel.bins >= 1, "bins must be at least 1");
  require(c.kernel.signal_variance > 0.0, "signal variance must be positive");
  require(c.kernel.degree >= 1, "polynomial degree must be at least 1");
  require(c.kernel.offset >= 0.0, "polynomial offset must be non-negative");
  require(c.bounds == "on" || c.bounds == "off" || c.bounds.rfind("floor:", 0) == 0,
          "bounds must be on, off or floor:<value>, got '" + c.bounds + "'");
  if (c.bounds.rfind("floor:", 0) == 0) parse_floor(c.bounds);
  require(c.noise == "probe-covariance" || c.noise == "diagonal",
          "noise must be probe-covariance or diagonal, got '" + c.noise + "'");
  require(c.prior == "interval" || c.prior == "unit", "prior must be interval or unit, got '" + c.prior + "'");
  if (c.scale) require(*c.scale > 0.0, "scale must be positive");
  parse_method(c.method);
  for (const auto& m : c.methods) parse_method(m);
  parse_method(c.backend);
  require(c.replicates >= 1, "replicates must be at least 1");
  require(c.samples >= 1, "samples must be at least 1");
  require(c.dim >= 1 && c.points_per_axis >= 1, "lattice needs positive dimension and size");
  require(c.upper > c.lower, "lattice upper bound must exceed the lower bound");
  require(c.true_lengthscale > 0.0, "true lengthscale must be positive");
  const std::string format = effective_format(c);
  require(format == "json" || format == "csv", "format must be json or csv, got '" + format + "'");
  if (c.subcommand == "estimate") {
    require(format == "json", "estimate writes JSON only");
    require(c.matrices.size() + c.synthetic.size() == 1, "estimate needs exactly one of --matrix or --synthetic");
  }
}

std::string effective_format(const RunConfig& c) {
  if (!c.format.empty()) return c.format;
  return c.subcommand == "estimate" ? "json" : "csv";
}

}  // namespace bqlogdet::cli
