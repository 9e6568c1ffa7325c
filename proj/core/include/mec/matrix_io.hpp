#pragma once

#include <string>

#include "mec/matrix.hpp"

namespace mec {

// Text formats.
//   Sparse: header "m n p", entry lines "i j v" (0-based, 1 <= v < p),
//           terminated by "0 0 0".
//   Dense:  header "m n p dense", then m lines of n residues in [0, p).
struct MatrixFile {
  std::uint64_t modulus = 0;
  bool is_dense = false;
  Matrix dense;
  SparseMatrix sparse;

  std::size_t rows() const { return is_dense ? dense.rows() : sparse.rows(); }
  std::size_t cols() const { return is_dense ? dense.cols() : sparse.cols(); }
  Matrix to_dense() const { return is_dense ? dense : sparse.to_dense(); }
};

// Throws IOError on open/parse/range failures, DuplicateEntry on repeated
// sparse coordinates.
MatrixFile read_matrix_file(const std::string& path);

void write_dense_file(const std::string& path, const Matrix& M, std::uint64_t p);
void write_sparse_file(const std::string& path, const SparseMatrix& M, std::uint64_t p);

}  // namespace mec
