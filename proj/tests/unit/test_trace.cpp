#include "bqlogdet/errors.hpp"
#include "bqlogdet/parallel.hpp"
#include "bqlogdet/probes.hpp"
#include "bqlogdet/trace.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>

using namespace bqlogdet;

TEST_CASE("trace of the identity is the mean squared probe norm") {
  const auto probes = ProbeSet::gaussian(40, 7, 3);
  const auto est = estimate_trace(LinearOperator::identity(40), probes);
  double expected = 0.0;
  for (Index i = 0; i < probes.count(); ++i) expected += probes.probe(i).squaredNorm();
  CHECK(est.estimate == doctest::Approx(expected / 7.0).epsilon(1e-14));
}

TEST_CASE("trace of diag(1,2,3) with many probes") {
  DenseMatrix d = DenseMatrix::Zero(3, 3);
  d.diagonal() << 1, 2, 3;
  const auto est = estimate_trace(LinearOperator::from_dense(d), ProbeSet::gaussian(3, 10000, 1));
  CHECK(std::abs(est.estimate - 6.0) <= 4.0 * est.standard_error);
}

TEST_CASE("trace of zero is exactly zero") {
  const auto est = estimate_trace(LinearOperator::from_dense(DenseMatrix::Zero(5, 5)), ProbeSet::gaussian(5, 9, 2));
  CHECK(est.estimate == 0.0);
  CHECK(est.standard_error == 0.0);
}

TEST_CASE("probes are reproducible and independent of the count") {
  const auto a = ProbeSet::gaussian(20, 5, 42);
  const auto b = ProbeSet::gaussian(20, 8, 42);
  CHECK((a.vectors() - b.vectors().leftCols(5)).cwiseAbs().maxCoeff() == 0.0);
  const auto c = ProbeSet::gaussian(20, 5, 43);
  CHECK((a.vectors() - c.vectors()).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("power moments of scaled identities") {
  const auto half = estimate_power_moments(LinearOperator::identity(10).scaled(0.5), 6, ProbeSet::gaussian(10, 4, 5));
  const auto one = estimate_power_moments(LinearOperator::identity(10), 6, ProbeSet::gaussian(10, 4, 5));
  // y_k / y_1 is exactly c^{k-1} probe by probe.
  for (Index k = 0; k < 6; ++k) {
    CHECK(half.values[k] / one.values[k] == doctest::Approx(std::pow(0.5, static_cast<double>(k + 1))));
    CHECK(one.values[k] == doctest::Approx(one.values[0]));
  }
  CHECK(half.mvp_count == 24);
}

TEST_CASE("power moments match the spectrum within four standard errors") {
  const Vector ev = oracle::uniform_spectrum(50, 0.0, 1.0, 9);
  const auto a = LinearOperator::from_dense(oracle::with_spectrum(ev, 10));
  const auto obs = estimate_power_moments(a, 10, ProbeSet::gaussian(50, 200, 11));
  for (Index k = 1; k <= 10; ++k) {
    const double exact = ev.array().pow(static_cast<double>(k)).mean();
    CHECK(std::abs(obs.values[k - 1] - exact) <= 4.0 * std::sqrt(obs.noise[k - 1]));
  }
  CHECK(obs.noise_covariance.rows() == 10);
  CHECK((obs.noise_covariance - obs.noise_covariance.transpose()).norm() <= 1e-12 * obs.noise_covariance.norm());
}

TEST_CASE("power moments are unbiased across seeds") {
  const Vector ev = oracle::uniform_spectrum(50, 0.0, 1.0, 19);
  const auto a = LinearOperator::from_dense(oracle::with_spectrum(ev, 20));
  Vector mean = Vector::Zero(10);
  Vector var = Vector::Zero(10);
  const int seeds = 50;
  for (int s = 0; s < seeds; ++s) {
    const auto obs = estimate_power_moments(a, 10, ProbeSet::gaussian(50, 20, 100 + s));
    mean += obs.values / seeds;
    var += obs.noise / (seeds * static_cast<double>(seeds));
  }
  for (Index k = 1; k <= 10; ++k) {
    const double exact = ev.array().pow(static_cast<double>(k)).mean();
    CHECK(std::abs(mean[k - 1] - exact) <= 4.0 * std::sqrt(var[k - 1]));
  }
}

TEST_CASE("power moments are deterministic") {
  const auto a = LinearOperator::from_dense(oracle::with_spectrum(oracle::uniform_spectrum(30, 0, 1, 1), 2));
  const auto x = estimate_power_moments(a, 8, ProbeSet::gaussian(30, 16, 7));
  const auto y = estimate_power_moments(a, 8, ProbeSet::gaussian(30, 16, 7));
  CHECK((x.values - y.values).cwiseAbs().maxCoeff() == 0.0);
  CHECK((x.noise_covariance - y.noise_covariance).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("power moment argument checks") {
  const auto a = LinearOperator::identity(4);
  CHECK_THROWS_AS(estimate_power_moments(a, 0, ProbeSet::gaussian(4, 2, 1)), InputError);
  CHECK_THROWS_AS(estimate_power_moments(a, 3, ProbeSet::gaussian(5, 2, 1)), DimensionError);
}

TEST_CASE("moments from a spectrum") {
  Vector ev(2);
  ev << 0.25, 0.75;
  const auto obs = moments_from_spectrum(ev, 3);
  CHECK(obs.values[0] == doctest::Approx(0.5));
  CHECK(obs.values[1] == doctest::Approx((0.0625 + 0.5625) / 2));
  CHECK(obs.noise.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("parallel_for visits each index once and rethrows the lowest failure") {
  std::vector<std::atomic<int>> hits(257);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (auto& h : hits) CHECK(h.load() == 1);
  try {
    parallel_for(100, [](std::size_t i) {
      if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "17");
  }
}
