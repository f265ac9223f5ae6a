#pragma once

#include "bqlogdet/operator.hpp"

#include <filesystem>
#include <iosfwd>

namespace bqlogdet {

/// Reads `coordinate real symmetric` (sparse) or `array real symmetric`
/// (dense) Matrix Market data. Coordinate files may store one triangle or
/// both; mirrored entries must agree.
LinearOperator read_matrix_market(std::istream& in, bool declared_psd = false);
LinearOperator load_matrix_market(const std::filesystem::path& path, bool declared_psd = false);

/// Writes the lower triangle in coordinate format with 17 significant digits.
void write_matrix_market(std::ostream& out, const LinearOperator& op);

}  // namespace bqlogdet
