#include "bqlogdet/experiments/dpp.hpp"

#include "bqlogdet/errors.hpp"
#include "bqlogdet/exact.hpp"
#include "bqlogdet/probes.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace bqlogdet {

namespace {

constexpr int kArgminDraws = 20000;

std::vector<Index> sample_from_eigen(const Vector& eigenvalues, const DenseMatrix& eigenvectors,
                                     std::mt19937_64& engine) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<Index> keep;
  for (Index i = 0; i < eigenvalues.size(); ++i) {
    const double lambda = std::max(eigenvalues[i], 0.0);
    if (uniform(engine) < lambda / (lambda + 1.0)) keep.push_back(i);
  }
  const Index n = eigenvectors.rows();
  DenseMatrix v(n, static_cast<Index>(keep.size()));
  for (Index c = 0; c < v.cols(); ++c) v.col(c) = eigenvectors.col(keep[c]);

  std::vector<Index> chosen;
  while (v.cols() > 0) {
    const Vector weights = v.rowwise().squaredNorm();
    const double u = uniform(engine) * weights.sum();
    Index i = 0;
    double acc = weights[0];
    while (acc < u && i + 1 < n) acc += weights[++i];
    chosen.push_back(i);

    Index j = 0;
    v.row(i).cwiseAbs().maxCoeff(&j);
    const Vector pivot = v.col(j);
    const Eigen::RowVectorXd row = v.row(i) / v(i, j);
    v -= pivot * row;
    // Drop column j, which is now zero.
    if (j + 1 < v.cols()) v.middleCols(j, v.cols() - j - 1) = v.rightCols(v.cols() - j - 1).eval();
    v.conservativeResize(Eigen::NoChange, v.cols() - 1);
    if (v.cols() > 0) {
      Eigen::HouseholderQR<DenseMatrix> qr(v);
      v = qr.householderQ() * DenseMatrix::Identity(n, v.cols());
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

DenseMatrix lattice_points(const LatticeSpec& lattice) {
  if (lattice.dim < 1 || lattice.points_per_axis < 1) throw InputError("lattice needs positive dimension and size");
  Index total = 1;
  for (Index d = 0; d < lattice.dim; ++d) total *= lattice.points_per_axis;
  const Index p = lattice.points_per_axis;
  const double step = p > 1 ? (lattice.upper - lattice.lower) / static_cast<double>(p - 1) : 0.0;
  DenseMatrix points(lattice.dim, total);
  for (Index idx = 0; idx < total; ++idx) {
    Index rest = idx;
    for (Index d = lattice.dim - 1; d >= 0; --d) {
      points(d, idx) = lattice.lower + step * static_cast<double>(rest % p);
      rest /= p;
    }
  }
  return points;
}

DenseMatrix dpp_kernel(const DenseMatrix& points, double lengthscale) {
  const Index n = points.cols();
  const double l2 = lengthscale * lengthscale;
  DenseMatrix l(n, n);
  for (Index j = 0; j < n; ++j) {
    l(j, j) = 1.0;
    for (Index i = j + 1; i < n; ++i) {
      const double v = std::exp(-0.5 * (points.col(i) - points.col(j)).squaredNorm() / l2);
      l(i, j) = v;
      l(j, i) = v;
    }
  }
  return l;
}

std::vector<Index> sample_dpp(const DenseMatrix& l, std::uint64_t seed) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(l);
  std::mt19937_64 engine(mix_seed(seed));
  return sample_from_eigen(eig.eigenvalues(), eig.eigenvectors(), engine);
}

std::vector<double> candidate_grid(const DppExperiment& experiment) {
  if (!experiment.candidates.empty()) return experiment.candidates;
  const double l = experiment.true_lengthscale;
  return {0.5 * l, l / std::numbers::sqrt2, l, std::numbers::sqrt2 * l, 2.0 * l};
}

DppResult dpp_lengthscale_selection(const DppExperiment& experiment, Method backend) {
  if (experiment.samples < 1) throw InputError("DPP experiment needs at least one sample");
  if (!(experiment.true_lengthscale > 0.0)) throw InputError("true lengthscale must be positive");
  const DenseMatrix points = lattice_points(experiment.lattice);

  DppResult result;
  {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> eig(dpp_kernel(points, experiment.true_lengthscale));
    for (Index s = 0; s < experiment.samples; ++s) {
      std::mt19937_64 engine(mix_seed(experiment.seed ^ static_cast<std::uint64_t>(s)));
      result.samples.push_back(sample_from_eigen(eig.eigenvalues(), eig.eigenvectors(), engine));
    }
  }

  const std::uint64_t probe_seed = mix_seed(experiment.seed + 0x243f6a8885a308d3ULL);
  const double sample_count = static_cast<double>(experiment.samples);
  for (double lengthscale : candidate_grid(experiment)) {
    DppCandidate cand;
    cand.lengthscale = lengthscale;
    if (!(lengthscale > 0.0)) {
      cand.valid = false;
      cand.diagnostic = "lengthscale must be positive";
      result.curve.push_back(cand);
      continue;
    }
    const DenseMatrix l = dpp_kernel(points, lengthscale);
    for (const auto& sample : result.samples) {
      if (sample.empty()) continue;
      DenseMatrix ls(sample.size(), sample.size());
      for (std::size_t a = 0; a < sample.size(); ++a) {
        for (std::size_t b = 0; b < sample.size(); ++b) ls(a, b) = l(sample[a], sample[b]);
      }
      Eigen::LLT<DenseMatrix> llt(ls);
      if (llt.info() != Eigen::Success) {
        cand.valid = false;
        cand.diagnostic = "L_S is not positive definite";
        break;
      }
      cand.data_term += 2.0 * llt.matrixLLT().diagonal().array().log().sum();
    }
    if (cand.valid) {
      DenseMatrix shifted = l;
      shifted.diagonal().array() += 1.0;
      const LinearOperator op = LinearOperator::from_dense(std::move(shifted), true).with_floor_hint(1.0);
      try {
        const BenchmarkRecord rec =
            run_method("dpp", op, backend, experiment.order, experiment.probes, probe_seed, experiment.bq);
        cand.log_normalizer = rec.estimate;
        cand.log_normalizer_stddev = rec.stddev.value_or(0.0);
      } catch (const NumericalError& e) {
        cand.valid = false;
        cand.diagnostic = e.what();
      }
    }
    cand.nll = sample_count * cand.log_normalizer - cand.data_term;
    cand.nll_stddev = sample_count * cand.log_normalizer_stddev;
    result.curve.push_back(cand);
  }

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < result.curve.size(); ++i) {
    if (result.curve[i].valid && result.curve[i].nll < best) {
      best = result.curve[i].nll;
      result.argmin = static_cast<Index>(i);
    }
  }
  if (result.argmin < 0) throw NumericalError("no candidate lengthscale produced a finite likelihood");
  result.argmin_lengthscale = result.curve[result.argmin].lengthscale;

  std::vector<int> wins(result.curve.size(), 0);
  std::mt19937_64 engine(mix_seed(experiment.seed ^ 0x13198a2e03707344ULL));
  std::normal_distribution<double> normal;
  for (int draw = 0; draw < kArgminDraws; ++draw) {
    double low = std::numeric_limits<double>::infinity();
    std::size_t at = 0;
    for (std::size_t i = 0; i < result.curve.size(); ++i) {
      const double z = normal(engine);
      if (!result.curve[i].valid) continue;
      const double v = result.curve[i].nll + result.curve[i].nll_stddev * z;
      if (v < low) {
        low = v;
        at = i;
      }
    }
    ++wins[at];
  }
  for (int w : wins) result.argmin_probability.push_back(static_cast<double>(w) / kArgminDraws);
  return result;
}

}  // namespace bqlogdet
