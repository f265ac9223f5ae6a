#include "bqlogdet/exact.hpp"

#include "bqlogdet/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <string>

namespace bqlogdet {

double exact_logdet(const LinearOperator& op) {
  const DenseMatrix d = op.to_dense();
  Eigen::LLT<DenseMatrix> llt(d);
  if (llt.info() == Eigen::Success) {
    return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
  }
  const Vector eig = Eigen::SelfAdjointEigenSolver<DenseMatrix>(d, Eigen::EigenvaluesOnly).eigenvalues();
  if (eig.size() && eig.minCoeff() <= 0.0) {
    throw NotPsdError("matrix has non-positive eigenvalue " + std::to_string(eig.minCoeff()));
  }
  return eig.array().log().sum();
}

Vector exact_spectrum(const LinearOperator& op) {
  return Eigen::SelfAdjointEigenSolver<DenseMatrix>(op.to_dense(), Eigen::EigenvaluesOnly).eigenvalues();
}

}  // namespace bqlogdet
