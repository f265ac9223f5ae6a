#include "bqlogdet/bounds.hpp"
#include "bqlogdet/cli/commands.hpp"
#include "bqlogdet/errors.hpp"
#include "bqlogdet/exact.hpp"
#include "bqlogdet/experiments/benchmark.hpp"
#include "bqlogdet/experiments/synthetic.hpp"
#include "bqlogdet/gp.hpp"
#include "bqlogdet/kernels.hpp"
#include "bqlogdet/matrix_market.hpp"
#include "bqlogdet/probabilistic.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <sstream>

namespace py = pybind11;
using namespace bqlogdet;

namespace {

BqOptions make_options(Index order, Index probes, std::uint64_t seed, const std::string& kernel, bool tune,
                       bool bounds, std::optional<double> floor, std::optional<double> scale, const std::string& noise,
                       const std::string& prior) {
  BqOptions o;
  o.order = order;
  o.probes = probes;
  o.seed = seed;
  if (kernel == "polynomial") {
    o.family = KernelFamily::polynomial;
    o.kernel = {PolynomialKernel{}, 1.0};
  } else if (kernel != "histogram") {
    throw InputError("kernel must be histogram or polynomial");
  }
  o.tune = tune;
  o.bounds = bounds ? BoundsMode::on : BoundsMode::off;
  o.floor = floor;
  o.scale = scale;
  if (noise == "diagonal") {
    o.noise = NoiseModel::diagonal;
  } else if (noise != "probe-covariance") {
    throw InputError("noise must be probe-covariance or diagonal");
  }
  if (prior != "interval" && prior != "unit") throw InputError("prior must be interval or unit");
  o.interval_prior = prior == "interval";
  return o;
}

py::dict estimate_dict(const LogDetEstimate& e) {
  py::dict d;
  d["value"] = e.value;
  d["stddev"] = e.stddev;
  d["gp_mean"] = e.gp_mean + e.correction;
  d["gp_stddev"] = std::sqrt(e.gp_variance);
  d["correction"] = e.correction;
  if (e.bounds) {
    d["bounds"] = py::make_tuple(e.bounds->lower + e.correction, e.bounds->upper + e.correction);
  } else {
    d["bounds"] = py::none();
  }
  d["mvp_count"] = e.mvp_count;
  d["truncated"] = e.truncated;
  d["truncation_underflow"] = e.truncation_underflow;
  d["tuning_fallback"] = e.tuning_fallback;
  d["kernel_family"] = to_string(e.kernel.family());
  d["signal_variance"] = e.kernel.signal_variance;
  d["prior_alpha"] = e.prior.alpha;
  d["prior_beta"] = e.prior.beta;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Log-determinant estimation with calibrated uncertainty";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<LinearOperator>(m, "LinearOperator")
      .def_static("from_dense", &LinearOperator::from_dense, py::arg("matrix"), py::arg("psd") = false)
      .def_static("from_sparse", &LinearOperator::from_sparse, py::arg("matrix"), py::arg("psd") = false)
      .def_static("identity", &LinearOperator::identity, py::arg("n"))
      .def_static("load", [](const std::string& path, bool psd) { return load_matrix_market(path, psd); },
                  py::arg("path"), py::arg("psd") = true)
      .def_static("synthetic",
                  [](const std::string& spec, std::uint64_t seed) { return generate_synthetic(parse_synthetic(spec, seed)); },
                  py::arg("spec"), py::arg("seed") = 0)
      .def_property_readonly("n", &LinearOperator::dimension)
      .def("trace", &LinearOperator::trace)
      .def("frobenius_squared", &LinearOperator::frobenius_squared)
      .def("scaled", &LinearOperator::scaled)
      .def("shifted", &LinearOperator::shifted)
      .def("with_floor_hint", &LinearOperator::with_floor_hint)
      .def("matvec", py::overload_cast<const Eigen::Ref<const Vector>&>(&LinearOperator::apply, py::const_))
      .def("to_dense", &LinearOperator::to_dense)
      .def("mvp_count", &LinearOperator::mvp_count)
      .def("gershgorin", [](const LinearOperator& op) {
        const auto iv = spectral_interval(op);
        return py::make_tuple(iv.lower, iv.upper);
      });

  m.def(
      "probabilistic_logdet",
      [](const LinearOperator& op, Index order, Index probes, std::uint64_t seed, const std::string& kernel, bool tune,
         bool bounds, std::optional<double> floor, std::optional<double> scale, const std::string& noise,
         const std::string& prior) {
        py::gil_scoped_release release;
        const BqOptions o = make_options(order, probes, seed, kernel, tune, bounds, floor, scale, noise, prior);
        const LogDetEstimate e = probabilistic_logdet(op, o);
        py::gil_scoped_acquire acquire;
        return estimate_dict(e);
      },
      py::arg("op"), py::arg("order") = 25, py::arg("probes") = 20, py::arg("seed") = 0,
      py::arg("kernel") = "histogram", py::arg("tune") = true, py::arg("bounds") = true,
      py::arg("floor") = py::none(), py::arg("scale") = py::none(), py::arg("noise") = "probe-covariance",
      py::arg("prior") = "interval");

  m.def(
      "logdet",
      [](const LinearOperator& op, const std::string& method, Index order, Index probes, std::uint64_t seed) {
        const BenchmarkRecord r = [&] {
          py::gil_scoped_release release;
          return run_method("op", op, parse_method(method), order, probes, seed, BqOptions{});
        }();
        py::dict d;
        d["value"] = r.estimate;
        d["stddev"] = r.stddev ? py::cast(*r.stddev) : py::none();
        d["sampling_error"] = r.sampling_error ? py::cast(*r.sampling_error) : py::none();
        d["mvp_count"] = r.mvp_count;
        return d;
      },
      py::arg("op"), py::arg("method") = "bq", py::arg("order") = 25, py::arg("probes") = 20, py::arg("seed") = 0);

  m.def("exact_logdet", &exact_logdet, py::arg("op"));

  m.def(
      "bounds",
      [](double mu1, double mu2, double alpha, double beta, Index n) {
        const auto b = compute_bounds(mu1, mu2, alpha, beta, n);
        return py::make_tuple(b.lower, b.upper);
      },
      py::arg("mu1"), py::arg("mu2"), py::arg("alpha"), py::arg("beta"), py::arg("n"));

  m.def(
      "truncate",
      [](double mean, double variance, double lower, double upper) {
        const auto t = truncate_posterior(mean, variance, lower, upper);
        return py::make_tuple(t.mean, t.variance, t.underflow);
      },
      py::arg("mean"), py::arg("variance"), py::arg("lower"), py::arg("upper"));

  m.def("hist_k_obs_obs", &hist_k_obs_obs, py::arg("k"), py::arg("kp"), py::arg("bins"));
  m.def("hist_k_pred_obs", &hist_k_pred_obs, py::arg("kp"), py::arg("bins"));
  m.def("hist_k_pred_pred", &hist_k_pred_pred, py::arg("bins"));
  m.def("poly_k_obs_obs", &poly_k_obs_obs, py::arg("k"), py::arg("kp"), py::arg("degree"), py::arg("offset"));
  m.def("poly_k_pred_obs", &poly_k_pred_obs, py::arg("kp"), py::arg("degree"), py::arg("offset"));
  m.def("poly_k_pred_pred", &poly_k_pred_pred, py::arg("degree"), py::arg("offset"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> full{"bqlogdet"};
        full.insert(full.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const auto& a : full) argv.push_back(a.c_str());
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in-process; returns (exit code, stdout, stderr).");
}
