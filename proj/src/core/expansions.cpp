#include "bqlogdet/expansions.hpp"

#include "bqlogdet/errors.hpp"
#include "bqlogdet/parallel.hpp"
#include "bqlogdet/special.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace bqlogdet {

namespace {

struct ProbeAverage {
  double mean = 0.0;
  double standard_error = 0.0;
};

ProbeAverage average(const Vector& per_probe) {
  ProbeAverage out;
  out.mean = per_probe.mean();
  const Index count = per_probe.size();
  if (count > 1) {
    const double var = (per_probe.array() - out.mean).square().sum() / static_cast<double>(count - 1);
    out.standard_error = std::sqrt(var / static_cast<double>(count));
  }
  return out;
}

void check_probes(const NormalizedOperator& k, const ProbeSet& probes) {
  if (probes.dimension() != k.base.dimension()) {
    throw DimensionError("probe length " + std::to_string(probes.dimension()) +
                         " does not match operator dimension " + std::to_string(k.base.dimension()));
  }
}

}  // namespace

const char* to_string(ExpansionMethod method) {
  switch (method) {
    case ExpansionMethod::taylor:
      return "taylor";
    case ExpansionMethod::chebyshev:
      return "chebyshev";
    case ExpansionMethod::slq:
      return "slq";
  }
  return "unknown";
}

ExpansionEstimate taylor_logdet(const MomentObservations& obs, Index n, double correction) {
  if (obs.order < 1) throw InputError("taylor_logdet needs at least one moment");
  Vector w(obs.order);
  for (Index k = 0; k < obs.order; ++k) w[k] = -static_cast<double>(n) / static_cast<double>(k + 1);

  ExpansionEstimate est;
  est.method = ExpansionMethod::taylor;
  est.order = obs.order;
  est.probes = obs.probe_count;
  est.mvp_count = obs.mvp_count;
  est.value = w.dot(obs.values);
  est.denormalized_value = est.value + correction;
  if (obs.noise_covariance.rows() == obs.order) {
    est.standard_error = std::sqrt(std::max(0.0, w.dot(obs.noise_covariance * w)));
  }
  return est;
}

double expected_taylor_error(double m, double nu) {
  return (digamma(m + nu + 1.5) - digamma(m)) / (nu + 1.5);
}

Vector chebyshev_coefficients(Index degree, const std::function<double(double)>& f) {
  if (degree < 0) throw InputError("Chebyshev degree must be non-negative");
  const Index nodes = degree + 1;
  Vector c = Vector::Zero(nodes);
  for (Index i = 0; i < nodes; ++i) {
    const double theta = std::numbers::pi * (static_cast<double>(i) + 0.5) / static_cast<double>(nodes);
    const double x = std::cos(theta);
    const double fx = f(0.5 * (x + 1.0));
    if (!std::isfinite(fx)) {
      throw DivergingCoefficientError("coefficient function is not finite at node " + std::to_string(0.5 * (x + 1.0)));
    }
    for (Index k = 0; k < nodes; ++k) c[k] += fx * std::cos(static_cast<double>(k) * theta);
  }
  c *= 2.0 / static_cast<double>(nodes);
  c[0] *= 0.5;
  return c;
}

ExpansionEstimate chebyshev_logdet(const NormalizedOperator& k, Index degree, const ProbeSet& probes,
                                   const std::function<double(double)>& f) {
  check_probes(k, probes);
  const std::function<double(double)> log_fn = [](double x) { return std::log(x); };
  const Vector c = chebyshev_coefficients(degree, f ? f : log_fn);
  const LinearOperator mapped = k.base.scaled(2.0).shifted(-1.0);
  const Index n = k.base.dimension();

  Vector per_probe(probes.count());
  parallel_for(static_cast<std::size_t>(probes.count()), [&](std::size_t idx) {
    const Index i = static_cast<Index>(idx);
    const auto r = probes.probe(i);
    Vector prev = r;
    double acc = c[0] * r.squaredNorm();
    if (degree >= 1) {
      Vector cur = mapped.apply(r);
      acc += c[1] * r.dot(cur);
      Vector next(n);
      for (Index j = 2; j <= degree; ++j) {
        mapped.apply(cur, next);
        next = 2.0 * next - prev;
        acc += c[j] * r.dot(next);
        prev.swap(cur);
        cur.swap(next);
      }
    }
    per_probe[i] = acc;
  });

  const ProbeAverage avg = average(per_probe);
  ExpansionEstimate est;
  est.method = ExpansionMethod::chebyshev;
  est.order = degree;
  est.probes = probes.count();
  est.mvp_count = static_cast<std::uint64_t>(degree) * static_cast<std::uint64_t>(probes.count());
  est.value = avg.mean;
  est.standard_error = avg.standard_error;
  est.denormalized_value = est.value + k.correction;
  return est;
}

TridiagonalFactor lanczos(const LinearOperator& op, const Eigen::Ref<const Vector>& v, Index steps,
                          Reorthogonalization reorth) {
  const Index n = op.dimension();
  if (v.size() != n) throw DimensionError("Lanczos start vector has the wrong length");
  if (steps < 1) throw InputError("Lanczos needs at least one step");
  const double vnorm = v.norm();
  if (!(vnorm > 0.0)) throw InputError("Lanczos start vector is zero");
  steps = std::min(steps, n);
  const double tolerance = 1e-12 * std::sqrt(op.frobenius_squared());

  const bool full = reorth == Reorthogonalization::full;
  DenseMatrix basis(n, full ? steps : 2);
  std::vector<double> alpha;
  std::vector<double> beta;
  Vector q = v / vnorm;
  Vector q_prev = Vector::Zero(n);
  Vector w(n);
  if (full) basis.col(0) = q;

  for (Index j = 0; j < steps; ++j) {
    op.apply(q, w);
    const double a = q.dot(w);
    alpha.push_back(a);
    w -= a * q;
    if (j > 0) w -= beta.back() * q_prev;
    if (full) {
      for (int pass = 0; pass < 2; ++pass) {
        const auto done = basis.leftCols(j + 1);
        w -= done * (done.transpose() * w);
      }
    }
    if (j + 1 == steps) break;
    const double b = w.norm();
    if (b < tolerance) break;
    beta.push_back(b);
    q_prev.swap(q);
    q = w / b;
    if (full) basis.col(j + 1) = q;
  }

  TridiagonalFactor t;
  t.steps = static_cast<Index>(alpha.size());
  t.diagonal = Eigen::Map<const Vector>(alpha.data(), t.steps);
  t.off_diagonal = Eigen::Map<const Vector>(beta.data(), t.steps - 1);
  return t;
}

ExpansionEstimate slq_logdet(const NormalizedOperator& k, Index steps, const ProbeSet& probes,
                             Reorthogonalization reorth) {
  check_probes(k, probes);
  if (steps < 1) throw InputError("SLQ needs at least one Lanczos step");
  Vector per_probe(probes.count());
  std::vector<Index> used(probes.count());
  parallel_for(static_cast<std::size_t>(probes.count()), [&](std::size_t idx) {
    const Index i = static_cast<Index>(idx);
    const auto r = probes.probe(i);
    const TridiagonalFactor t = lanczos(k.base, r, steps, reorth);
    used[i] = t.steps;
    Eigen::SelfAdjointEigenSolver<DenseMatrix> eig;
    eig.computeFromTridiagonal(t.diagonal, t.off_diagonal, Eigen::ComputeEigenvectors);
    const Vector& theta = eig.eigenvalues();
    if (theta.minCoeff() <= 0.0) {
      throw IndefiniteError("non-positive Ritz value " + std::to_string(theta.minCoeff()) + " in SLQ probe " +
                            std::to_string(i));
    }
    const Vector tau = eig.eigenvectors().row(0).transpose();
    per_probe[i] = r.squaredNorm() * (tau.array().square() * theta.array().log()).sum();
  });

  const ProbeAverage avg = average(per_probe);
  ExpansionEstimate est;
  est.method = ExpansionMethod::slq;
  est.order = steps;
  est.probes = probes.count();
  for (Index s : used) est.mvp_count += static_cast<std::uint64_t>(s);
  est.value = avg.mean;
  est.standard_error = avg.standard_error;
  est.denormalized_value = est.value + k.correction;
  return est;
}

}  // namespace bqlogdet
