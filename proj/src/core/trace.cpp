#include "bqlogdet/trace.hpp"

#include "bqlogdet/errors.hpp"
#include "bqlogdet/parallel.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace bqlogdet {

namespace {

void check_probes(const LinearOperator& op, const ProbeSet& probes) {
  if (probes.dimension() != op.dimension()) {
    throw DimensionError("probe length " + std::to_string(probes.dimension()) +
                         " does not match operator dimension " + std::to_string(op.dimension()));
  }
}

}  // namespace

TraceEstimate estimate_trace(const LinearOperator& op, const ProbeSet& probes) {
  check_probes(op, probes);
  const Index count = probes.count();
  Vector q(count);
  parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
    const auto r = probes.probe(static_cast<Index>(i));
    q[static_cast<Index>(i)] = r.dot(op.apply(r));
  });
  TraceEstimate out;
  out.estimate = q.mean();
  if (count > 1) {
    const double var = (q.array() - out.estimate).square().sum() / static_cast<double>(count - 1);
    out.standard_error = std::sqrt(var / static_cast<double>(count));
  }
  return out;
}

MomentObservations estimate_power_moments(const LinearOperator& a, Index order, const ProbeSet& probes) {
  if (order < 1) throw InputError("moment order must be at least 1");
  check_probes(a, probes);
  const Index n = a.dimension();
  const Index count = probes.count();

  std::vector<Vector> quad(count);
  std::vector<DenseMatrix> gram(count);
  parallel_for(static_cast<std::size_t>(count), [&](std::size_t idx) {
    const Index i = static_cast<Index>(idx);
    DenseMatrix z(n, order);
    a.apply(probes.probe(i), z.col(0));
    for (Index k = 1; k < order; ++k) a.apply(z.col(k - 1), z.col(k));
    quad[i] = z.transpose() * probes.probe(i);
    gram[i] = z.transpose() * z;
  });

  MomentObservations obs;
  obs.order = order;
  obs.dimension = n;
  obs.probe_count = count;
  obs.mvp_count = static_cast<std::uint64_t>(order) * static_cast<std::uint64_t>(count);
  const double nd = static_cast<double>(n);
  const double cd = static_cast<double>(count);

  Vector sum = Vector::Zero(order);
  DenseMatrix gram_sum = DenseMatrix::Zero(order, order);
  for (Index i = 0; i < count; ++i) {
    sum += quad[i];
    gram_sum += gram[i];
  }
  const Vector mean = sum / cd;
  obs.values = mean / nd;
  obs.noise = Vector::Zero(order);
  if (count > 1) {
    Vector sq = Vector::Zero(order);
    for (Index i = 0; i < count; ++i) sq += (quad[i] - mean).cwiseAbs2();
    obs.noise = sq / (cd - 1.0) / cd / (nd * nd);
  }
  obs.noise_covariance = 2.0 * gram_sum / cd / (nd * nd * cd);
  return obs;
}

MomentObservations moments_from_spectrum(const Vector& spectrum, Index order) {
  if (order < 1) throw InputError("moment order must be at least 1");
  MomentObservations obs;
  obs.order = order;
  obs.dimension = spectrum.size();
  obs.values.resize(order);
  Eigen::ArrayXd power = spectrum.array();
  for (Index k = 0; k < order; ++k) {
    obs.values[k] = power.sum() / static_cast<double>(spectrum.size());
    power *= spectrum.array();
  }
  obs.noise = Vector::Zero(order);
  obs.noise_covariance = DenseMatrix::Zero(order, order);
  return obs;
}

}  // namespace bqlogdet
