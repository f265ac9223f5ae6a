#include "bqlogdet/errors.hpp"
#include "bqlogdet/expansions.hpp"
#include "bqlogdet/probes.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace bqlogdet;

namespace {

ExpansionEstimate taylor_from_spectrum_of_k(const Vector& k_spectrum, Index m) {
  const Vector a = (1.0 - k_spectrum.array()).matrix();
  return taylor_logdet(moments_from_spectrum(a, m), k_spectrum.size());
}

}  // namespace

TEST_CASE("taylor: partial sum for a single eigenvalue") {
  const auto est = taylor_from_spectrum_of_k(Vector::Constant(1, 0.5), 3);
  CHECK(est.value == doctest::Approx(-(0.5 + 0.125 + 0.125 / 3.0)).epsilon(1e-14));
  CHECK(std::abs(est.value - std::log(0.5)) > 0.02);
}

TEST_CASE("taylor: identity gives zero") {
  for (Index m : {1, 5, 40}) CHECK(taylor_from_spectrum_of_k(Vector::Ones(7), m).value == 0.0);
}

TEST_CASE("taylor: matches the eigenvalue double sum") {
  const Vector k = oracle::uniform_spectrum(50, 0.05, 1.0, 3);
  double expected = 0.0;
  for (Index i = 0; i < 50; ++i) {
    for (int j = 1; j <= 30; ++j) expected -= std::pow(1.0 - k[i], j) / j;
  }
  CHECK(taylor_from_spectrum_of_k(k, 30).value == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("taylor: exact moments converge monotonically from above") {
  const Vector k = oracle::uniform_spectrum(60, 0.1, 1.0, 4);
  const double exact = oracle::sum_log(k);
  double previous = 0.0;
  for (Index m = 1; m <= 200; m += 7) {
    const double v = taylor_from_spectrum_of_k(k, m).value;
    CHECK(v <= previous + 1e-12);
    CHECK(v >= exact - 1e-9);
    previous = v;
  }
}

TEST_CASE("expected taylor error") {
  CHECK(expected_taylor_error(1, 0) == doctest::Approx(0.8535815370311841).epsilon(1e-12));
  CHECK(expected_taylor_error(1, 0) ==
        doctest::Approx((oracle::digamma_series(2.5) - oracle::digamma_series(1.0)) / 1.5).epsilon(1e-10));
  for (double nu : {0.0, 1.0, 2.0}) {
    CHECK(expected_taylor_error(2048, nu) / expected_taylor_error(1024, nu) == doctest::Approx(0.5).epsilon(0.01));
  }
}

TEST_CASE("chebyshev coefficients interpolate at the nodes") {
  auto f = [](double x) { return std::exp(x); };
  const Index degree = 9;
  const Vector c = chebyshev_coefficients(degree, f);
  for (Index j = 0; j <= degree; ++j) {
    const double t = std::cos(M_PI * (j + 0.5) / (degree + 1));
    double value = 0.0;
    for (Index k = 0; k <= degree; ++k) value += c[k] * std::cos(k * std::acos(t));
    CHECK(value == doctest::Approx(f((t + 1.0) / 2.0)).epsilon(1e-12));
  }
}

TEST_CASE("chebyshev: identity reproduces n times the interpolant at one") {
  const auto k = normalize(LinearOperator::identity(10));
  const auto probes = ProbeSet::from_columns(std::sqrt(10.0) * DenseMatrix::Identity(10, 10));
  for (Index degree : {4, 14, 30}) {
    const Vector c = chebyshev_coefficients(degree, [](double x) { return std::log(x); });
    const double p1 = c.sum();  // T_k(1) = 1
    const auto est = chebyshev_logdet(k, degree, probes);
    CHECK(est.value == doctest::Approx(10.0 * p1).epsilon(1e-12));
  }
  // log is singular at 0, so the interpolant only approaches log 1 = 0 slowly.
  const auto low = chebyshev_logdet(k, 4, probes);
  const auto high = chebyshev_logdet(k, 64, probes);
  CHECK(std::abs(high.value) < std::abs(low.value));
}

TEST_CASE("chebyshev: constant diagonal within four standard errors") {
  const auto op = LinearOperator::identity(50).scaled(0.5);
  const auto k = normalize(op, 1.0);
  const auto est = chebyshev_logdet(k, 14, ProbeSet::gaussian(50, 100, 3));
  const Vector c = chebyshev_coefficients(14, [](double x) { return std::log(x); });
  double p_half = 0.0;  // interpolant at 0.5, i.e. t = 0
  for (Index j = 0; j <= 14; j += 2) p_half += c[j] * ((j / 2) % 2 == 0 ? 1.0 : -1.0);
  const double bias = 50.0 * (p_half - std::log(0.5));
  CHECK(std::abs(est.value - 50.0 * std::log(0.5)) <= 4.0 * est.standard_error + std::abs(bias) + 1e-9);
  CHECK(est.mvp_count == 14 * 100);
}

TEST_CASE("chebyshev: non-positive coefficient function values are rejected") {
  CHECK_THROWS_AS(chebyshev_coefficients(5, [](double x) { return std::log(x - 0.5); }), DivergingCoefficientError);
}

TEST_CASE("lanczos: one step from an eigenvector") {
  const auto op = LinearOperator::from_dense(DenseMatrix::Constant(1, 1, 3.0));
  const auto t = lanczos(op, Vector::Ones(1), 5);
  CHECK(t.steps == 1);
  CHECK(t.diagonal[0] == doctest::Approx(3.0));
}

TEST_CASE("lanczos: identity breaks down after one step") {
  const auto t = lanczos(LinearOperator::identity(8), Vector::LinSpaced(8, 1, 2), 8);
  CHECK(t.steps == 1);
  CHECK(t.diagonal[0] == doctest::Approx(1.0));
}

TEST_CASE("lanczos: full run recovers the spectrum") {
  const Vector ev = oracle::uniform_spectrum(20, 0.1, 2.0, 6);
  const auto op = LinearOperator::from_dense(oracle::with_spectrum(ev, 7));
  const auto t = lanczos(op, Vector::Ones(20), 20);
  REQUIRE(t.steps == 20);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es;
  es.computeFromTridiagonal(t.diagonal, t.off_diagonal, Eigen::EigenvaluesOnly);
  Vector sorted = ev;
  std::sort(sorted.data(), sorted.data() + sorted.size());
  CHECK((es.eigenvalues() - sorted).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("slq: identity gives zero") {
  const auto est = slq_logdet(normalize(LinearOperator::identity(12)), 5, ProbeSet::gaussian(12, 4, 1));
  CHECK(est.value == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("slq: uniform diagonal within four standard errors") {
  const Vector ev = oracle::uniform_spectrum(100, 0.1, 1.0, 8);
  const auto op = LinearOperator::from_dense(DenseMatrix(ev.asDiagonal()));
  const auto k = normalize(op, 1.0);
  const auto est = slq_logdet(k, 15, ProbeSet::gaussian(100, 50, 9));
  CHECK(std::abs(est.value - oracle::sum_log(ev)) <= 4.0 * est.standard_error);
}

TEST_CASE("slq: an eigenvector probe recovers log lambda exactly") {
  const Vector ev = oracle::uniform_spectrum(6, 0.2, 0.9, 2);
  const DenseMatrix m = oracle::with_spectrum(ev, 3);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(m);
  const Vector r = 2.0 * es.eigenvectors().col(2);
  const auto k = normalize(LinearOperator::from_dense(m), 1.0);
  const auto est = slq_logdet(k, 1, ProbeSet::from_columns(r));
  // One probe: the estimate is r^T log(K) r = ||r||^2 log lambda.
  CHECK(est.value == doctest::Approx(4.0 * std::log(es.eigenvalues()[2])).epsilon(1e-10));
}

TEST_CASE("slq: indefinite matrices abort") {
  DenseMatrix d = DenseMatrix::Zero(4, 4);
  d.diagonal() << 1, 0.5, -0.5, 0.2;
  const auto k = normalize(LinearOperator::from_dense(d), 1.0);
  CHECK_THROWS_AS(slq_logdet(k, 4, ProbeSet::gaussian(4, 2, 1)), IndefiniteError);
}
