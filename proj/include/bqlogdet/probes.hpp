#pragma once

#include "bqlogdet/operator.hpp"

#include <cstdint>

namespace bqlogdet {

/// N_r probe vectors stored as the columns of an n x N_r matrix.
class ProbeSet {
 public:
  /// Gaussian probes. Probe i is drawn from its own generator seeded by
  /// mixing (seed xor i), so any subset can be regenerated independently.
  static ProbeSet gaussian(Index n, Index count, std::uint64_t seed);

  /// Caller-chosen probe vectors (for instance scaled basis vectors).
  static ProbeSet from_columns(DenseMatrix columns);

  Index count() const noexcept { return vectors_.cols(); }
  Index dimension() const noexcept { return vectors_.rows(); }
  std::uint64_t seed() const noexcept { return seed_; }
  auto probe(Index i) const { return vectors_.col(i); }
  const DenseMatrix& vectors() const noexcept { return vectors_; }

 private:
  DenseMatrix vectors_;
  std::uint64_t seed_ = 0;
};

/// SplitMix64 finalizer; also used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t x);

}  // namespace bqlogdet
