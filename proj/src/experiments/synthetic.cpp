#include "bqlogdet/experiments/synthetic.hpp"

#include "bqlogdet/errors.hpp"
#include "bqlogdet/probes.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace bqlogdet {

namespace {

constexpr Index kMaxSyntheticSize = 5000;

std::string format_number(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double parse_number(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* first = value.data();
  const char* last = first + value.size();
  if (value == "inf") return std::numeric_limits<double>::infinity();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) throw InputError("synthetic spec: bad value '" + value + "' for " + key);
  return out;
}

}  // namespace

SyntheticSpec parse_synthetic(const std::string& text, std::uint64_t default_seed) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  if (kind != "gaussian") throw InputError("synthetic spec: unknown generator '" + kind + "'");
  SyntheticSpec spec;
  spec.seed = default_seed;
  bool has_n = false;
  bool has_l = false;
  if (colon != std::string::npos) {
    std::stringstream fields(text.substr(colon + 1));
    std::string field;
    while (std::getline(fields, field, ',')) {
      const auto eq = field.find('=');
      if (eq == std::string::npos) throw InputError("synthetic spec: expected key=value, got '" + field + "'");
      const std::string key = field.substr(0, eq);
      const std::string value = field.substr(eq + 1);
      if (key == "n") {
        spec.n = static_cast<Index>(parse_number(key, value));
        has_n = true;
      } else if (key == "l") {
        spec.lengthscale = parse_number(key, value);
        has_l = true;
      } else if (key == "d") {
        spec.input_dim = static_cast<Index>(parse_number(key, value));
      } else if (key == "seed") {
        spec.seed = static_cast<std::uint64_t>(parse_number(key, value));
      } else if (key == "jitter") {
        spec.jitter = parse_number(key, value);
      } else {
        throw InputError("synthetic spec: unknown key '" + key + "'");
      }
    }
  }
  if (!has_n || !has_l) throw InputError("synthetic spec needs n and l");
  if (spec.n < 1 || spec.n > kMaxSyntheticSize) {
    throw InputError("synthetic spec: n must be in [1, " + std::to_string(kMaxSyntheticSize) + "]");
  }
  if (spec.input_dim < 1) throw InputError("synthetic spec: d must be positive");
  if (spec.lengthscale < 0.0) throw InputError("synthetic spec: lengthscale must be non-negative");
  if (!(spec.jitter >= 0.0)) throw InputError("synthetic spec: jitter must be non-negative");
  return spec;
}

std::string to_string(const SyntheticSpec& spec) {
  return "gaussian:n=" + std::to_string(spec.n) + ",l=" + format_number(spec.lengthscale) +
         ",d=" + std::to_string(spec.input_dim) + ",seed=" + std::to_string(spec.seed) +
         ",jitter=" + format_number(spec.jitter);
}

LinearOperator generate_synthetic(const SyntheticSpec& spec) {
  if (spec.n < 1 || spec.n > kMaxSyntheticSize) throw InputError("synthetic size out of range");
  std::mt19937_64 engine(mix_seed(spec.seed));
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  DenseMatrix x(spec.input_dim, spec.n);
  for (Index j = 0; j < spec.n; ++j) {
    for (Index d = 0; d < spec.input_dim; ++d) x(d, j) = uniform(engine);
  }

  const double l2 = spec.lengthscale * spec.lengthscale;
  DenseMatrix k(spec.n, spec.n);
  for (Index j = 0; j < spec.n; ++j) {
    k(j, j) = 1.0 + spec.jitter;
    for (Index i = j + 1; i < spec.n; ++i) {
      const double d2 = (x.col(i) - x.col(j)).squaredNorm();
      double v;
      if (std::isinf(spec.lengthscale)) {
        v = 1.0;
      } else if (l2 == 0.0) {
        v = d2 == 0.0 ? 1.0 : 0.0;
      } else {
        v = std::exp(-0.5 * d2 / l2);
      }
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  LinearOperator op = LinearOperator::from_dense(std::move(k), true);
  return spec.jitter > 0.0 ? op.with_floor_hint(spec.jitter) : op;
}

std::vector<SyntheticSpec> decay_profiles(Index n, std::uint64_t seed, Index input_dim) {
  std::vector<SyntheticSpec> out;
  for (int i = 0; i < 6; ++i) {
    SyntheticSpec s;
    s.n = n;
    s.input_dim = input_dim;
    s.seed = seed;
    s.lengthscale = 0.05 * std::pow(100.0, i / 5.0);
    s.label = "decay-" + std::to_string(i + 1);
    out.push_back(s);
  }
  return out;
}

}  // namespace bqlogdet
