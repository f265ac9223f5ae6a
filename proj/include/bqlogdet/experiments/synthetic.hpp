#pragma once

#include "bqlogdet/operator.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace bqlogdet {

/// Squared-exponential Gram matrix over n uniform points in [0, 1]^d plus
/// jitter on the diagonal. Small lengthscales give slowly decaying spectra,
/// large ones fast decay.
struct SyntheticSpec {
  Index n = 1000;
  double lengthscale = 1.0;
  Index input_dim = 5;
  std::uint64_t seed = 0;
  double jitter = 1e-10;
  std::string label;
};

/// Parses "gaussian:n=500,l=1.0[,d=5][,seed=3][,jitter=1e-10]". The seed
/// defaults to default_seed when absent.
SyntheticSpec parse_synthetic(const std::string& text, std::uint64_t default_seed);

/// Canonical text form accepted by parse_synthetic.
std::string to_string(const SyntheticSpec& spec);

/// Declared PSD, with the jitter recorded as the spectral floor.
LinearOperator generate_synthetic(const SyntheticSpec& spec);

/// Six lengthscales log-spaced over [0.05, 5], slowest decay first.
std::vector<SyntheticSpec> decay_profiles(Index n, std::uint64_t seed, Index input_dim = 5);

}  // namespace bqlogdet
