#include "mec/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace mec {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Number of a*b terms (a, b < p) that fit in a 128-bit accumulator that may
// already hold a reduced residue.
u64 flush_interval(u64 p) {
  u128 maxprod = (u128)(p - 1) * (p - 1);
  if (maxprod == 0) return ~0ULL;
  u128 room = (~(u128)0 - (p - 1)) / maxprod;
  return room > ~0ULL ? ~0ULL : static_cast<u64>(room);
}

}  // namespace

Matrix Matrix::identity(std::size_t n) {
  Matrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I.row(i)[i] = Fp{1};
  return I;
}

SparseMatrix SparseMatrix::from_entries(std::size_t m, std::size_t n,
                                        std::vector<SparseEntry> es) {
  SparseMatrix S(m, n);
  es.erase(std::remove_if(es.begin(), es.end(),
                          [](const SparseEntry& e) { return e.value.v == 0; }),
           es.end());
  for (const auto& e : es) {
    if (e.row >= m || e.col >= n) throw IndexOutOfRange("sparse entry outside matrix");
  }
  std::sort(es.begin(), es.end(), [](const SparseEntry& a, const SparseEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t i = 1; i < es.size(); ++i) {
    if (es[i].row == es[i - 1].row && es[i].col == es[i - 1].col) {
      throw DuplicateEntry("repeated sparse coordinate");
    }
  }
  S.e_ = std::move(es);
  return S;
}

SparseMatrix SparseMatrix::from_dense(const Matrix& d) {
  SparseMatrix S(d.rows(), d.cols());
  for (std::size_t i = 0; i < d.rows(); ++i) {
    const Fp* r = d.row(i);
    for (std::size_t j = 0; j < d.cols(); ++j) {
      if (r[j].v != 0) S.e_.push_back({i, j, r[j]});
    }
  }
  return S;
}

Fp SparseMatrix::get(std::size_t i, std::size_t j) const {
  if (i >= m_ || j >= n_) throw IndexOutOfRange("sparse access out of range");
  SparseEntry key{i, j, Fp{0}};
  auto it = std::lower_bound(e_.begin(), e_.end(), key,
                             [](const SparseEntry& a, const SparseEntry& b) {
                               return a.row != b.row ? a.row < b.row : a.col < b.col;
                             });
  if (it != e_.end() && it->row == i && it->col == j) return it->value;
  return Fp{0};
}

void SparseMatrix::add_at(std::size_t i, std::size_t j, Fp delta, const FieldContext& F) {
  if (i >= m_ || j >= n_) throw IndexOutOfRange("sparse access out of range");
  if (delta.v == 0) return;
  SparseEntry key{i, j, Fp{0}};
  auto it = std::lower_bound(e_.begin(), e_.end(), key,
                             [](const SparseEntry& a, const SparseEntry& b) {
                               return a.row != b.row ? a.row < b.row : a.col < b.col;
                             });
  if (it != e_.end() && it->row == i && it->col == j) {
    it->value = F.add(it->value, delta);
    if (it->value.v == 0) e_.erase(it);
  } else {
    e_.insert(it, SparseEntry{i, j, delta});
  }
}

Matrix SparseMatrix::to_dense() const {
  Matrix d(m_, n_);
  for (const auto& e : e_) d.row(e.row)[e.col] = e.value;
  return d;
}

SparseMatrix SparseMatrix::transposed() const {
  SparseMatrix S(n_, m_);
  S.e_.reserve(e_.size());
  for (const auto& e : e_) S.e_.push_back({e.col, e.row, e.value});
  std::sort(S.e_.begin(), S.e_.end(), [](const SparseEntry& a, const SparseEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  return S;
}

MulPlan plan_mul(std::size_t m, std::size_t l, std::size_t n, std::size_t nnz_left) {
  double dims[3] = {double(m), double(l), double(n)};
  double mind = std::min({dims[0], dims[1], dims[2]});
  double dense = dims[0] * dims[1] * dims[2];
  if (mind > 0) dense /= std::pow(mind, 3.0 - std::log2(7.0));
  double sparse = double(nnz_left) * double(n);
  if (sparse <= dense) return {MulKernel::SparseLeft, sparse};
  if (mind >= double(kStrassenThreshold)) return {MulKernel::Strassen, dense};
  return {MulKernel::NaiveDense, dense};
}

Matrix mat_mul_naive(const FieldContext& F, const Matrix& A, const Matrix& B) {
  if (A.cols() != B.rows()) throw DimensionMismatch("inner dimensions disagree");
  const std::size_t m = A.rows(), l = A.cols(), n = B.cols();
  Matrix C(m, n);
  if (m == 0 || n == 0) return C;
  const u64 p = F.modulus();
  const u64 chunk = std::max<u64>(1, flush_interval(p));
  std::vector<u128> acc(n);
  for (std::size_t i = 0; i < m; ++i) {
    std::fill(acc.begin(), acc.end(), u128{0});
    const Fp* arow = A.row(i);
    std::size_t done = 0;
    while (done < l) {
      std::size_t stop = done + std::min<u64>(chunk, l - done);
      for (std::size_t k = done; k < stop; ++k) {
        const u64 a = arow[k].v;
        if (a == 0) continue;
        const Fp* brow = B.row(k);
        for (std::size_t j = 0; j < n; ++j) acc[j] += (u128)a * brow[j].v;
      }
      done = stop;
      if (done < l) {
        for (std::size_t j = 0; j < n; ++j) acc[j] %= p;
      }
    }
    Fp* crow = C.row(i);
    for (std::size_t j = 0; j < n; ++j) crow[j] = Fp{static_cast<u64>(acc[j] % p)};
  }
  return C;
}

namespace {

Matrix block(const Matrix& A, std::size_t i0, std::size_t j0, std::size_t h, std::size_t w) {
  Matrix out(h, w);
  for (std::size_t i = 0; i < h; ++i) {
    const Fp* src = A.row(i0 + i) + j0;
    std::copy(src, src + w, out.row(i));
  }
  return out;
}

void put_block(Matrix& C, const Matrix& P, std::size_t i0, std::size_t j0) {
  for (std::size_t i = 0; i < P.rows(); ++i) {
    std::copy(P.row(i), P.row(i) + P.cols(), C.row(i0 + i) + j0);
  }
}

void accumulate_block(const FieldContext& F, Matrix& C, const Matrix& P, std::size_t i0,
                      std::size_t j0) {
  for (std::size_t i = 0; i < P.rows(); ++i) {
    Fp* dst = C.row(i0 + i) + j0;
    const Fp* src = P.row(i);
    for (std::size_t j = 0; j < P.cols(); ++j) dst[j] = F.add(dst[j], src[j]);
  }
}

// Square Strassen recursion; odd sizes are zero-padded to even at each level.
Matrix strassen_square(const FieldContext& F, const Matrix& A, const Matrix& B,
                       std::size_t threshold) {
  const std::size_t d = A.rows();
  if (d <= threshold) return mat_mul_naive(F, A, B);
  if (d % 2) {
    Matrix Ap(d + 1, d + 1), Bp(d + 1, d + 1);
    put_block(Ap, A, 0, 0);
    put_block(Bp, B, 0, 0);
    Matrix Cp = strassen_square(F, Ap, Bp, threshold);
    return block(Cp, 0, 0, d, d);
  }
  const std::size_t h = d / 2;
  Matrix A11 = block(A, 0, 0, h, h), A12 = block(A, 0, h, h, h);
  Matrix A21 = block(A, h, 0, h, h), A22 = block(A, h, h, h, h);
  Matrix B11 = block(B, 0, 0, h, h), B12 = block(B, 0, h, h, h);
  Matrix B21 = block(B, h, 0, h, h), B22 = block(B, h, h, h, h);
  Matrix M1 = strassen_square(F, mat_add(F, A11, A22), mat_add(F, B11, B22), threshold);
  Matrix M2 = strassen_square(F, mat_add(F, A21, A22), B11, threshold);
  Matrix M3 = strassen_square(F, A11, mat_sub(F, B12, B22), threshold);
  Matrix M4 = strassen_square(F, A22, mat_sub(F, B21, B11), threshold);
  Matrix M5 = strassen_square(F, mat_add(F, A11, A12), B22, threshold);
  Matrix M6 = strassen_square(F, mat_sub(F, A21, A11), mat_add(F, B11, B12), threshold);
  Matrix M7 = strassen_square(F, mat_sub(F, A12, A22), mat_add(F, B21, B22), threshold);
  Matrix C(d, d);
  put_block(C, mat_add(F, mat_sub(F, mat_add(F, M1, M4), M5), M7), 0, 0);
  put_block(C, mat_add(F, M3, M5), 0, h);
  put_block(C, mat_add(F, M2, M4), h, 0);
  put_block(C, mat_add(F, mat_sub(F, M1, M2), mat_add(F, M3, M6)), h, h);
  return C;
}

Matrix sparse_left_mul(const FieldContext& F, const SparseMatrix& A, const Matrix& B) {
  Matrix C(A.rows(), B.cols());
  const std::size_t n = B.cols();
  for (const auto& e : A.entries()) {
    Fp* crow = C.row(e.row);
    const Fp* brow = B.row(e.col);
    for (std::size_t j = 0; j < n; ++j) {
      crow[j] = F.add(crow[j], F.mul(e.value, brow[j]));
    }
  }
  return C;
}

}  // namespace

Matrix mat_mul_strassen(const FieldContext& F, const Matrix& A, const Matrix& B,
                        std::size_t threshold) {
  if (A.cols() != B.rows()) throw DimensionMismatch("inner dimensions disagree");
  const std::size_t m = A.rows(), l = A.cols(), n = B.cols();
  const std::size_t d = std::min({m, l, n});
  if (d < threshold) return mat_mul_naive(F, A, B);
  if (m == d && l == d && n == d) return strassen_square(F, A, B, threshold);
  // Rectangular case: tile into d x d squares, Strassen on full tiles.
  Matrix C(m, n);
  for (std::size_t i0 = 0; i0 < m; i0 += d) {
    const std::size_t bi = std::min(d, m - i0);
    for (std::size_t k0 = 0; k0 < l; k0 += d) {
      const std::size_t bk = std::min(d, l - k0);
      Matrix Ablk = block(A, i0, k0, bi, bk);
      for (std::size_t j0 = 0; j0 < n; j0 += d) {
        const std::size_t bj = std::min(d, n - j0);
        Matrix Bblk = block(B, k0, j0, bk, bj);
        Matrix P = (bi == d && bk == d && bj == d)
                       ? strassen_square(F, Ablk, Bblk, threshold)
                       : mat_mul_naive(F, Ablk, Bblk);
        accumulate_block(F, C, P, i0, j0);
      }
    }
  }
  return C;
}

Matrix mat_mul(const FieldContext& F, const Matrix& A, const Matrix& B) {
  if (A.cols() != B.rows()) throw DimensionMismatch("inner dimensions disagree");
  std::size_t nnz = 0;
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const Fp* r = A.row(i);
    for (std::size_t j = 0; j < A.cols(); ++j) nnz += r[j].v != 0;
  }
  MulPlan plan = plan_mul(A.rows(), A.cols(), B.cols(), nnz);
  switch (plan.kernel) {
    case MulKernel::Strassen:
      return mat_mul_strassen(F, A, B);
    case MulKernel::SparseLeft:
      // The naive kernel skips zero left entries, which is exactly the
      // sparse-left traversal for dense storage.
      return mat_mul_naive(F, A, B);
    case MulKernel::NaiveDense:
    default:
      return mat_mul_naive(F, A, B);
  }
}

Matrix mat_mul(const FieldContext& F, const SparseMatrix& A, const Matrix& B) {
  if (A.cols() != B.rows()) throw DimensionMismatch("inner dimensions disagree");
  MulPlan plan = plan_mul(A.rows(), A.cols(), B.cols(), A.nnz());
  if (plan.kernel == MulKernel::SparseLeft) return sparse_left_mul(F, A, B);
  Matrix Ad = A.to_dense();
  if (plan.kernel == MulKernel::Strassen) return mat_mul_strassen(F, Ad, B);
  return mat_mul_naive(F, Ad, B);
}

std::vector<Fp> mat_vec(const FieldContext& F, const SparseMatrix& M,
                        const std::vector<Fp>& v) {
  if (v.size() != M.cols()) throw DimensionMismatch("vector length disagrees");
  std::vector<Fp> out(M.rows(), Fp{0});
  for (const auto& e : M.entries()) {
    out[e.row] = F.add(out[e.row], F.mul(e.value, v[e.col]));
  }
  return out;
}

Matrix mat_add(const FieldContext& F, const Matrix& A, const Matrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) throw DimensionMismatch("shape disagrees");
  Matrix C(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const Fp* a = A.row(i);
    const Fp* b = B.row(i);
    Fp* c = C.row(i);
    for (std::size_t j = 0; j < A.cols(); ++j) c[j] = F.add(a[j], b[j]);
  }
  return C;
}

Matrix mat_sub(const FieldContext& F, const Matrix& A, const Matrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) throw DimensionMismatch("shape disagrees");
  Matrix C(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const Fp* a = A.row(i);
    const Fp* b = B.row(i);
    Fp* c = C.row(i);
    for (std::size_t j = 0; j < A.cols(); ++j) c[j] = F.sub(a[j], b[j]);
  }
  return C;
}

Matrix transpose(const Matrix& A) {
  Matrix T(A.cols(), A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const Fp* r = A.row(i);
    for (std::size_t j = 0; j < A.cols(); ++j) T.row(j)[i] = r[j];
  }
  return T;
}

Matrix submatrix_rows(const Matrix& A, const std::vector<std::size_t>& idx) {
  Matrix out(idx.size(), A.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= A.rows()) throw IndexOutOfRange("row index out of range");
    std::copy(A.row(idx[i]), A.row(idx[i]) + A.cols(), out.row(i));
  }
  return out;
}

Matrix submatrix_cols(const Matrix& A, const std::vector<std::size_t>& idx) {
  Matrix out(A.rows(), idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) {
    if (idx[j] >= A.cols()) throw IndexOutOfRange("column index out of range");
  }
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const Fp* r = A.row(i);
    for (std::size_t j = 0; j < idx.size(); ++j) out.row(i)[j] = r[idx[j]];
  }
  return out;
}

}  // namespace mec
