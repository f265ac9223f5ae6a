#include "bqlogdet/errors.hpp"
#include "bqlogdet/exact.hpp"
#include "bqlogdet/experiments/synthetic.hpp"
#include "bqlogdet/experiments/test_matrices.hpp"
#include "bqlogdet/probabilistic.hpp"

#include <doctest.h>

#include <cmath>

using namespace bqlogdet;

TEST_CASE("identity gives zero") {
  const auto est = probabilistic_logdet(LinearOperator::identity(100), BqOptions{});
  CHECK(std::abs(est.value) <= 2.0 * est.stddev + 1e-12);
  CHECK(est.value == doctest::Approx(0.0));
}

TEST_CASE("gaussian-kernel gram matrix within two standard deviations") {
  SyntheticSpec spec;
  spec.n = 500;
  spec.lengthscale = 0.1;
  spec.seed = 5;
  const auto k = generate_synthetic(spec);
  BqOptions options;
  options.seed = 5;
  const auto est = probabilistic_logdet(k, options);
  CHECK(std::abs(est.value - exact_logdet(k)) <= 2.0 * est.stddev);
  CHECK(est.mvp_count == 25 * 20);
}

TEST_CASE("result invariants") {
  const auto k = poisson_2d(12, 0.1);
  BqOptions options;
  options.order = 10;
  options.seed = 3;
  const auto est = probabilistic_logdet(k, options);
  REQUIRE(est.bounds.has_value());
  CHECK(est.truncated);
  CHECK(est.truncated_mean >= est.bounds->lower);
  CHECK(est.truncated_mean <= est.bounds->upper);
  CHECK(est.truncated_variance <= est.gp_variance);
  CHECK(est.stddev == doctest::Approx(std::sqrt(est.truncated_variance)));
  CHECK(est.value == est.truncated_mean + est.correction);
  CHECK(est.mvp_count == 10 * 20);

  options.bounds = BoundsMode::off;
  const auto off = probabilistic_logdet(k, options);
  CHECK_FALSE(off.truncated);
  CHECK(off.value == off.gp_mean + off.correction);
}

TEST_CASE("pre-scaling shifts the value by n log c") {
  const auto k = random_graph_laplacian(200, 3, 0.3, 2);
  BqOptions options;
  options.order = 12;
  options.seed = 9;
  const auto a = probabilistic_logdet(k, options);
  const auto b = probabilistic_logdet(k.scaled(7.5), options);
  CHECK(b.value - a.value == doctest::Approx(200.0 * std::log(7.5)).epsilon(1e-9));
  CHECK(b.stddev == doctest::Approx(a.stddev).epsilon(1e-6));
}

TEST_CASE("same seed, same result") {
  const auto k = path_laplacian(300, 0.05);
  BqOptions options;
  options.seed = 1;
  const auto a = probabilistic_logdet(k, options);
  const auto b = probabilistic_logdet(k, options);
  CHECK(a.value == b.value);
  CHECK(a.stddev == b.stddev);
}

TEST_CASE("fixed kernels and the polynomial family") {
  const auto k = poisson_3d(6, 0.5);
  BqOptions options;
  options.tune = false;
  options.kernel = {PolynomialKernel{2, 0.1}, 0.01};
  const auto fixed = probabilistic_logdet(k, options);
  CHECK(fixed.kernel.family() == KernelFamily::polynomial);
  CHECK(fixed.kernel.signal_variance == 0.01);
  options.tune = true;
  options.family = KernelFamily::polynomial;
  const auto tuned = probabilistic_logdet(k, options);
  CHECK(tuned.kernel.family() == KernelFamily::polynomial);
  CHECK(std::isfinite(tuned.value));
}

TEST_CASE("floors and failures") {
  DenseMatrix a(2, 2);
  a << 1, 2, 2, 5;
  const auto undeclared = LinearOperator::from_dense(a);
  CHECK_THROWS_AS(probabilistic_logdet(undeclared, BqOptions{}), NotPsdError);
  BqOptions options;
  options.floor = 0.1;
  const auto est = probabilistic_logdet(undeclared, options);
  CHECK(est.bounds.has_value());

  const auto psd = LinearOperator::from_dense(a, true);
  const auto no_bounds = probabilistic_logdet(psd, BqOptions{});
  CHECK_FALSE(no_bounds.bounds.has_value());
  CHECK_FALSE(no_bounds.truncated);

  options.order = 0;
  CHECK_THROWS_AS(probabilistic_logdet(psd, options), InputError);
}
