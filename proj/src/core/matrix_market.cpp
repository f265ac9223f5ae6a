#include "bqlogdet/matrix_market.hpp"

#include "bqlogdet/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace bqlogdet {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

struct LineReader {
  std::istream& in;
  std::size_t number = 0;

  // Next line that is neither blank nor a comment.
  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++number;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '%') continue;
      return true;
    }
    return false;
  }
};

template <typename T>
T parse_field(std::istringstream& fields, std::size_t line, const char* what) {
  T value{};
  if (!(fields >> value)) {
    throw ParseError(line, std::string("expected ") + what);
  }
  return value;
}

void expect_end(std::istringstream& fields, std::size_t line) {
  std::string rest;
  if (fields >> rest) throw ParseError(line, "unexpected trailing token '" + rest + "'");
}

std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

LinearOperator read_matrix_market(std::istream& in, bool declared_psd) {
  std::string banner;
  if (!std::getline(in, banner)) throw ParseError(1, "empty input");
  std::istringstream header(banner);
  std::string tag, object, format, field, symmetry;
  header >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket" || symmetry.empty()) {
    throw ParseError(1, "missing %%MatrixMarket banner");
  }
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix") throw UnsupportedFormatError("unsupported object '" + object + "'");
  if (format != "coordinate" && format != "array") {
    throw UnsupportedFormatError("unsupported format '" + format + "'");
  }
  if (field != "real" && field != "double" && field != "integer") {
    throw UnsupportedFormatError("unsupported field '" + field + "'");
  }
  if (symmetry != "symmetric") {
    throw UnsupportedFormatError("unsupported symmetry '" + symmetry + "', only symmetric matrices are accepted");
  }

  LineReader reader{in, 1};
  std::string line;
  if (!reader.next(line)) throw ParseError(reader.number + 1, "missing size line");
  std::istringstream size_fields(line);
  const long rows = parse_field<long>(size_fields, reader.number, "row count");
  const long cols = parse_field<long>(size_fields, reader.number, "column count");
  if (rows != cols) {
    throw UnsupportedFormatError("matrix is not square (" + std::to_string(rows) + "x" + std::to_string(cols) + ")");
  }
  if (rows < 0) throw ParseError(reader.number, "negative dimension");
  const Index n = rows;

  if (format == "array") {
    expect_end(size_fields, reader.number);
    DenseMatrix m = DenseMatrix::Zero(n, n);
    for (Index j = 0; j < n; ++j) {
      for (Index i = j; i < n; ++i) {
        if (!reader.next(line)) throw ParseError(reader.number + 1, "unexpected end of data");
        std::istringstream fields(line);
        const double v = parse_field<double>(fields, reader.number, "value");
        expect_end(fields, reader.number);
        m(i, j) = v;
        m(j, i) = v;
      }
    }
    return LinearOperator::from_dense(std::move(m), declared_psd);
  }

  const long nnz = parse_field<long>(size_fields, reader.number, "entry count");
  expect_end(size_fields, reader.number);
  if (nnz < 0) throw ParseError(reader.number, "negative entry count");

  // Keyed by (row, col) with row >= col so mirrored full-storage entries meet.
  std::map<std::pair<Index, Index>, double> lower_entries;
  for (long e = 0; e < nnz; ++e) {
    if (!reader.next(line)) throw ParseError(reader.number + 1, "unexpected end of data");
    std::istringstream fields(line);
    const long i = parse_field<long>(fields, reader.number, "row index");
    const long j = parse_field<long>(fields, reader.number, "column index");
    const double v = parse_field<double>(fields, reader.number, "value");
    expect_end(fields, reader.number);
    if (i < 1 || j < 1 || i > n || j > n) {
      throw ParseError(reader.number, "index (" + std::to_string(i) + ", " + std::to_string(j) + ") out of range");
    }
    const std::pair<Index, Index> key{std::max(i, j) - 1, std::min(i, j) - 1};
    auto [it, inserted] = lower_entries.emplace(key, v);
    if (!inserted) {
      if (i == j || it->second != v) {
        throw ParseError(reader.number, "conflicting duplicate entry (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
  if (reader.next(line)) throw ParseError(reader.number, "more entries than declared");

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * lower_entries.size());
  for (const auto& [key, v] : lower_entries) {
    triplets.emplace_back(key.first, key.second, v);
    if (key.first != key.second) triplets.emplace_back(key.second, key.first, v);
  }
  SparseMatrix m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return LinearOperator::from_sparse(std::move(m), declared_psd);
}

LinearOperator load_matrix_market(const std::filesystem::path& path, bool declared_psd) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open matrix file '" + path.string() + "'");
  try {
    return read_matrix_market(in, declared_psd);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), std::string(e.what()).substr(std::string(e.what()).find(": ") + 2) +
                                   " in '" + path.string() + "'");
  }
}

void write_matrix_market(std::ostream& out, const LinearOperator& op) {
  const DenseMatrix d = op.to_dense();
  std::vector<std::string> entries;
  for (Index j = 0; j < d.cols(); ++j) {
    for (Index i = j; i < d.rows(); ++i) {
      if (d(i, j) != 0.0) {
        entries.push_back(std::to_string(i + 1) + " " + std::to_string(j + 1) + " " + format_double(d(i, j)));
      }
    }
  }
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << d.rows() << " " << d.cols() << " " << entries.size() << "\n";
  for (const auto& e : entries) out << e << "\n";
}

}  // namespace bqlogdet
