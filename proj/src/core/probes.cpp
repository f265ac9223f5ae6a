#include "bqlogdet/probes.hpp"

#include "bqlogdet/errors.hpp"

#include <random>

namespace bqlogdet {

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

ProbeSet ProbeSet::gaussian(Index n, Index count, std::uint64_t seed) {
  if (n < 1 || count < 1) throw InputError("probe set needs n >= 1 and at least one probe");
  ProbeSet set;
  set.seed_ = seed;
  set.vectors_.resize(n, count);
  for (Index i = 0; i < count; ++i) {
    std::mt19937_64 engine(mix_seed(seed ^ static_cast<std::uint64_t>(i)));
    std::normal_distribution<double> normal;
    for (Index r = 0; r < n; ++r) set.vectors_(r, i) = normal(engine);
  }
  return set;
}

ProbeSet ProbeSet::from_columns(DenseMatrix columns) {
  if (columns.cols() < 1) throw InputError("probe set needs at least one probe");
  ProbeSet set;
  set.vectors_ = std::move(columns);
  return set;
}

}  // namespace bqlogdet
