#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <variant>

namespace bqlogdet {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using DenseMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/**
 * Immutable symmetric operator of the form shift*I + scale*M, where M is a
 * stored dense or sparse symmetric matrix.
 *
 * Copies share storage. Scaling and shifting return new views without
 * touching M, so normalizing a large matrix costs nothing. Trace, squared
 * Frobenius norm and Gershgorin data of M are computed once at construction.
 */
class LinearOperator {
 public:
  /// Empty operator of dimension 0.
  LinearOperator();

  /// Throws InputError when m is not square or not symmetric.
  static LinearOperator from_dense(DenseMatrix m, bool declared_psd = false);
  static LinearOperator from_sparse(SparseMatrix m, bool declared_psd = false);
  static LinearOperator identity(Index n);

  Index dimension() const noexcept { return n_; }
  bool is_sparse() const noexcept;

  /// mu1 = Tr(op).
  double trace() const noexcept;
  /// mu2 = squared Frobenius norm of op.
  double frobenius_squared() const noexcept;

  bool declared_psd() const noexcept { return psd_; }
  /// A caller-supplied lower bound on the spectrum, if any.
  std::optional<double> floor_hint() const noexcept { return floor_; }

  LinearOperator with_declared_psd(bool psd) const;
  LinearOperator with_floor_hint(double floor) const;

  /// factor * op. Keeps the PSD flag and floor hint when factor > 0.
  LinearOperator scaled(double factor) const;
  /// op + s*I.
  LinearOperator shifted(double s) const;

  /// out = op * v. Throws DimensionError on length mismatch. Reentrant.
  void apply(const Eigen::Ref<const Vector>& v, Eigen::Ref<Vector> out) const;
  Vector apply(const Eigen::Ref<const Vector>& v) const;

  /// Gershgorin disc centres and radii of op.
  Vector disc_centres() const;
  Vector disc_radii() const;

  DenseMatrix to_dense() const;

  /// Number of apply calls made through this operator or its copies.
  std::uint64_t mvp_count() const noexcept;
  void reset_mvp_count() const noexcept;

 private:
  struct Storage;
  explicit LinearOperator(std::shared_ptr<const Storage> storage);

  std::shared_ptr<const Storage> storage_;
  std::shared_ptr<std::atomic<std::uint64_t>> counter_;
  Index n_ = 0;
  double shift_ = 0.0;
  double scale_ = 1.0;
  bool psd_ = false;
  std::optional<double> floor_;
};

enum class IntervalSource { gershgorin, user_supplied };

struct SpectralInterval {
  double lower = 0.0;
  double upper = 0.0;
  IntervalSource source = IntervalSource::gershgorin;
};

/// Gershgorin enclosure of the spectrum; lower clamped at 0 for declared-PSD operators.
SpectralInterval gershgorin_interval(const LinearOperator& op);

/// Gershgorin enclosure tightened by the operator's floor hint when that is larger.
SpectralInterval spectral_interval(const LinearOperator& op);

struct NormalizedOperator {
  LinearOperator base;  ///< K' = K / c
  double scale = 1.0;   ///< c
  double correction = 0.0;  ///< n log c
  SpectralInterval interval;  ///< enclosure of the spectrum of base
};

/// Divide by the Gershgorin upper bound (or a user-chosen scale) so the
/// spectrum lies in [0, 1]. Throws NotPsdError when the scale is not positive.
NormalizedOperator normalize(const LinearOperator& op,
                             std::optional<double> scale_override = std::nullopt);

}  // namespace bqlogdet
