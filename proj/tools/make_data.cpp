// Writes the bundled test matrices as Matrix Market files.
#include "bqlogdet/experiments/test_matrices.hpp"
#include "bqlogdet/matrix_market.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: bqlogdet_make_data <output-dir>\n";
    return 1;
  }
  const std::filesystem::path dir(argv[1]);
  std::filesystem::create_directories(dir);
  for (const auto& m : bqlogdet::bundled_matrices()) {
    std::ofstream out(dir / (m.id + ".mtx"));
    bqlogdet::write_matrix_market(out, m.op);
    std::cout << m.id << " n=" << m.op.dimension() << '\n';
  }
  return 0;
}
