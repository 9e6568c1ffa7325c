#pragma once

#include <cstdint>
#include <vector>

#include "mec/field.hpp"

namespace mec {

// Dense row-major matrix of canonical residues.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t m, std::size_t n) : m_(m), n_(n), d_(m * n, Fp{0}) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }

  Fp at(std::size_t i, std::size_t j) const {
    if (i >= m_ || j >= n_) throw IndexOutOfRange("matrix access out of range");
    return d_[i * n_ + j];
  }
  void set(std::size_t i, std::size_t j, Fp v) {
    if (i >= m_ || j >= n_) throw IndexOutOfRange("matrix access out of range");
    d_[i * n_ + j] = v;
  }

  // Unchecked row pointers for kernels.
  const Fp* row(std::size_t i) const { return d_.data() + i * n_; }
  Fp* row(std::size_t i) { return d_.data() + i * n_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.d_ == b.d_;
  }

 private:
  std::size_t m_ = 0, n_ = 0;
  std::vector<Fp> d_;
};

struct SparseEntry {
  std::size_t row = 0, col = 0;
  Fp value{};
  friend bool operator==(const SparseEntry& a, const SparseEntry& b) {
    return a.row == b.row && a.col == b.col && a.value == b.value;
  }
};

// Coordinate-format sparse matrix; entries sorted by (row, col), values nonzero.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t m, std::size_t n) : m_(m), n_(n) {}

  // Sorts; drops explicit zeros; throws DuplicateEntry on repeated coordinates,
  // IndexOutOfRange on coordinates outside m x n.
  static SparseMatrix from_entries(std::size_t m, std::size_t n, std::vector<SparseEntry> es);
  static SparseMatrix from_dense(const Matrix& d);

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::size_t nnz() const { return e_.size(); }
  const std::vector<SparseEntry>& entries() const { return e_; }

  Fp get(std::size_t i, std::size_t j) const;
  // entry(i, j) += delta mod p; inserts or erases as needed.
  void add_at(std::size_t i, std::size_t j, Fp delta, const FieldContext& F);

  Matrix to_dense() const;
  SparseMatrix transposed() const;

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.m_ == b.m_ && a.n_ == b.n_ && a.e_ == b.e_;
  }

 private:
  std::size_t m_ = 0, n_ = 0;
  std::vector<SparseEntry> e_;
};

// Kernel selection for an (m x l) * (l x n) product whose left operand has
// nnz_left nonzero entries. The dense estimate is m*l*n / min(m,l,n)^(3-lg 7),
// the sparse-left estimate nnz_left * n; ties prefer the sparse kernel, and a
// dense pick recurses with Strassen only when the smallest dimension reaches
// the threshold.
enum class MulKernel { NaiveDense, Strassen, SparseLeft };
struct MulPlan {
  MulKernel kernel;
  double predicted_cost;
};
inline constexpr std::size_t kStrassenThreshold = 64;
MulPlan plan_mul(std::size_t m, std::size_t l, std::size_t n, std::size_t nnz_left);

Matrix mat_mul(const FieldContext& F, const Matrix& A, const Matrix& B);
Matrix mat_mul(const FieldContext& F, const SparseMatrix& A, const Matrix& B);
Matrix mat_mul_naive(const FieldContext& F, const Matrix& A, const Matrix& B);
Matrix mat_mul_strassen(const FieldContext& F, const Matrix& A, const Matrix& B,
                        std::size_t threshold = kStrassenThreshold);

std::vector<Fp> mat_vec(const FieldContext& F, const SparseMatrix& M,
                        const std::vector<Fp>& v);

Matrix mat_add(const FieldContext& F, const Matrix& A, const Matrix& B);
Matrix mat_sub(const FieldContext& F, const Matrix& A, const Matrix& B);
Matrix transpose(const Matrix& A);
Matrix submatrix_rows(const Matrix& A, const std::vector<std::size_t>& idx);
Matrix submatrix_cols(const Matrix& A, const std::vector<std::size_t>& idx);

}  // namespace mec
