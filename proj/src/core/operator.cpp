#include "bqlogdet/operator.hpp"

#include "bqlogdet/errors.hpp"

#include <cmath>
#include <string>

namespace bqlogdet {

struct LinearOperator::Storage {
  std::variant<DenseMatrix, SparseMatrix> matrix;
  double trace = 0.0;
  double frobenius_squared = 0.0;
  Vector diagonal;
  Vector offdiag_abs_sums;
};

namespace {

constexpr double kSymmetryTolerance = 1e-10;

void check_symmetric(double asymmetry, double magnitude) {
  if (asymmetry > kSymmetryTolerance * std::max(magnitude, 1.0)) {
    throw InputError("matrix is not symmetric (max asymmetry " + std::to_string(asymmetry) + ")");
  }
}

}  // namespace

LinearOperator::LinearOperator()
    : LinearOperator(std::make_shared<const Storage>(Storage{DenseMatrix(0, 0), 0.0, 0.0, Vector(), Vector()})) {}

LinearOperator::LinearOperator(std::shared_ptr<const Storage> storage)
    : storage_(std::move(storage)), counter_(std::make_shared<std::atomic<std::uint64_t>>(0)) {
  n_ = storage_->diagonal.size();
}

LinearOperator LinearOperator::from_dense(DenseMatrix m, bool declared_psd) {
  if (m.rows() != m.cols()) {
    throw InputError("matrix is not square");
  }
  const double magnitude = m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
  const double asymmetry = m.size() ? (m - m.transpose()).cwiseAbs().maxCoeff() : 0.0;
  check_symmetric(asymmetry, magnitude);

  Storage s;
  s.trace = m.trace();
  s.frobenius_squared = m.squaredNorm();
  s.diagonal = m.diagonal();
  s.offdiag_abs_sums = m.cwiseAbs().rowwise().sum() - s.diagonal.cwiseAbs();
  s.matrix = std::move(m);
  LinearOperator op(std::make_shared<const Storage>(std::move(s)));
  op.psd_ = declared_psd;
  return op;
}

LinearOperator LinearOperator::from_sparse(SparseMatrix m, bool declared_psd) {
  if (m.rows() != m.cols()) {
    throw InputError("matrix is not square");
  }
  m.makeCompressed();
  const SparseMatrix t = m.transpose();
  const double magnitude = m.nonZeros() ? m.coeffs().cwiseAbs().maxCoeff() : 0.0;
  const SparseMatrix diff = m - t;
  const double asymmetry = diff.nonZeros() ? diff.coeffs().cwiseAbs().maxCoeff() : 0.0;
  check_symmetric(asymmetry, magnitude);

  Storage s;
  s.diagonal = Vector::Zero(m.rows());
  s.offdiag_abs_sums = Vector::Zero(m.rows());
  for (Index i = 0; i < m.outerSize(); ++i) {
    for (SparseMatrix::InnerIterator it(m, i); it; ++it) {
      s.frobenius_squared += it.value() * it.value();
      if (it.col() == i) {
        s.diagonal[i] += it.value();
      } else {
        s.offdiag_abs_sums[i] += std::abs(it.value());
      }
    }
  }
  s.trace = s.diagonal.sum();
  s.matrix = std::move(m);
  LinearOperator op(std::make_shared<const Storage>(std::move(s)));
  op.psd_ = declared_psd;
  return op;
}

LinearOperator LinearOperator::identity(Index n) {
  SparseMatrix m(n, n);
  m.setIdentity();
  return from_sparse(std::move(m), true);
}

bool LinearOperator::is_sparse() const noexcept {
  return std::holds_alternative<SparseMatrix>(storage_->matrix);
}

double LinearOperator::trace() const noexcept {
  return shift_ * static_cast<double>(n_) + scale_ * storage_->trace;
}

double LinearOperator::frobenius_squared() const noexcept {
  return shift_ * shift_ * static_cast<double>(n_) + 2.0 * shift_ * scale_ * storage_->trace +
         scale_ * scale_ * storage_->frobenius_squared;
}

LinearOperator LinearOperator::with_declared_psd(bool psd) const {
  LinearOperator op = *this;
  op.psd_ = psd;
  return op;
}

LinearOperator LinearOperator::with_floor_hint(double floor) const {
  LinearOperator op = *this;
  op.floor_ = floor;
  return op;
}

LinearOperator LinearOperator::scaled(double factor) const {
  LinearOperator op = *this;
  op.counter_ = std::make_shared<std::atomic<std::uint64_t>>(0);
  op.shift_ *= factor;
  op.scale_ *= factor;
  if (factor > 0.0) {
    if (floor_) op.floor_ = *floor_ * factor;
  } else {
    op.psd_ = factor == 0.0;
    op.floor_.reset();
  }
  return op;
}

LinearOperator LinearOperator::shifted(double s) const {
  LinearOperator op = *this;
  op.counter_ = std::make_shared<std::atomic<std::uint64_t>>(0);
  op.shift_ += s;
  if (floor_) op.floor_ = *floor_ + s;
  if (s < 0.0) op.psd_ = false;
  return op;
}

void LinearOperator::apply(const Eigen::Ref<const Vector>& v, Eigen::Ref<Vector> out) const {
  if (v.size() != n_ || out.size() != n_) {
    throw DimensionError("apply: expected vectors of length " + std::to_string(n_) + ", got " +
                         std::to_string(v.size()));
  }
  std::visit([&](const auto& m) { out.noalias() = m * v; }, storage_->matrix);
  if (scale_ != 1.0) out *= scale_;
  if (shift_ != 0.0) out += shift_ * v;
  counter_->fetch_add(1, std::memory_order_relaxed);
}

Vector LinearOperator::apply(const Eigen::Ref<const Vector>& v) const {
  Vector out(n_);
  apply(v, out);
  return out;
}

Vector LinearOperator::disc_centres() const {
  return (scale_ * storage_->diagonal).array() + shift_;
}

Vector LinearOperator::disc_radii() const {
  return std::abs(scale_) * storage_->offdiag_abs_sums;
}

DenseMatrix LinearOperator::to_dense() const {
  DenseMatrix d = std::visit([](const auto& m) { return DenseMatrix(m); }, storage_->matrix);
  d *= scale_;
  d.diagonal().array() += shift_;
  return d;
}

std::uint64_t LinearOperator::mvp_count() const noexcept {
  return counter_->load(std::memory_order_relaxed);
}

void LinearOperator::reset_mvp_count() const noexcept {
  counter_->store(0, std::memory_order_relaxed);
}

SpectralInterval gershgorin_interval(const LinearOperator& op) {
  SpectralInterval interval;
  if (op.dimension() == 0) return interval;
  const Vector centres = op.disc_centres();
  const Vector radii = op.disc_radii();
  interval.lower = (centres - radii).minCoeff();
  interval.upper = (centres + radii).maxCoeff();
  if (op.declared_psd()) interval.lower = std::max(interval.lower, 0.0);
  return interval;
}

SpectralInterval spectral_interval(const LinearOperator& op) {
  SpectralInterval interval = gershgorin_interval(op);
  if (op.floor_hint() && *op.floor_hint() > interval.lower) {
    interval.lower = std::min(*op.floor_hint(), interval.upper);
    interval.source = IntervalSource::user_supplied;
  }
  return interval;
}

NormalizedOperator normalize(const LinearOperator& op, std::optional<double> scale_override) {
  const SpectralInterval interval = spectral_interval(op);
  const double c = scale_override ? *scale_override : interval.upper;
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw NotPsdError("normalization scale must be positive, got " + std::to_string(c));
  }
  NormalizedOperator out;
  out.base = op.scaled(1.0 / c);
  out.scale = c;
  out.correction = static_cast<double>(op.dimension()) * std::log(c);
  out.interval.lower = interval.lower / c;
  out.interval.upper = scale_override ? std::min(interval.upper / c, 1.0) : 1.0;
  out.interval.source = scale_override ? IntervalSource::user_supplied : interval.source;
  return out;
}

}  // namespace bqlogdet
