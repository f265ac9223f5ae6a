#pragma once

#include "bqlogdet/operator.hpp"

namespace bqlogdet {

/// Dense Cholesky log-determinant; falls back to a symmetric eigensolve when
/// Cholesky fails. Throws NotPsdError for non-positive eigenvalues. O(n^3),
/// intended as the reference value at desk scale.
double exact_logdet(const LinearOperator& op);

/// Ascending eigenvalues of the materialized operator.
Vector exact_spectrum(const LinearOperator& op);

}  // namespace bqlogdet
