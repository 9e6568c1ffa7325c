#include "mec/eval.hpp"

#include "mec/poly.hpp"

namespace mec {

namespace {

// Row of a dense matrix as sparse support (column index, value).
std::vector<std::pair<std::uint64_t, Fp>> row_support(const Matrix& M, std::size_t i) {
  std::vector<std::pair<std::uint64_t, Fp>> sup;
  const Fp* row = M.row(i);
  for (std::size_t j = 0; j < M.cols(); ++j) {
    if (row[j].v != 0) sup.emplace_back(j, row[j]);
  }
  return sup;
}

}  // namespace

Matrix diff_eval(const FieldContext& F, const Matrix& Ap, const Matrix& B, const Matrix& Cp,
                 std::size_t s) {
  const std::size_t r = Ap.rows(), l = Ap.cols(), n = B.cols();
  if (B.rows() != l || Cp.rows() != r || Cp.cols() != n) {
    throw DimensionMismatch("diff_eval shapes disagree");
  }
  if (F.theta_order() < n) throw OrderTooSmall("theta order below the column count");
  const std::size_t w = 2 * s;
  const Fp theta = F.theta();

  Matrix Yc(r, w);
  for (std::size_t i = 0; i < r; ++i) {
    auto vals = tvand_apply(F, row_support(Cp, i), theta, w);
    std::copy(vals.begin(), vals.end(), Yc.row(i));
  }

  std::size_t nnz = 0;
  for (std::size_t i = 0; i < r; ++i) {
    const Fp* row = Ap.row(i);
    for (std::size_t k = 0; k < l; ++k) nnz += row[k].v != 0;
  }
  MulPlan plan = plan_mul(r, l, w, nnz);

  Matrix Yab;
  if (plan.kernel == MulKernel::SparseLeft) {
    // Only rows of BV hit by a nonzero column of Ap are ever needed.
    std::vector<char> used(l, 0);
    for (std::size_t i = 0; i < r; ++i) {
      const Fp* row = Ap.row(i);
      for (std::size_t k = 0; k < l; ++k) {
        if (row[k].v != 0) used[k] = 1;
      }
    }
    Matrix Yb(l, w);
    for (std::size_t k = 0; k < l; ++k) {
      if (!used[k]) continue;
      auto vals = tvand_apply(F, row_support(B, k), theta, w);
      std::copy(vals.begin(), vals.end(), Yb.row(k));
    }
    Yab = Matrix(r, w);
    for (std::size_t i = 0; i < r; ++i) {
      const Fp* arow = Ap.row(i);
      Fp* yrow = Yab.row(i);
      for (std::size_t k = 0; k < l; ++k) {
        if (arow[k].v == 0) continue;
        const Fp* brow = Yb.row(k);
        for (std::size_t j = 0; j < w; ++j) {
          yrow[j] = F.add(yrow[j], F.mul(arow[k], brow[j]));
        }
      }
    }
  } else {
    Matrix Yb(l, w);
    for (std::size_t k = 0; k < l; ++k) {
      auto vals = tvand_apply(F, row_support(B, k), theta, w);
      std::copy(vals.begin(), vals.end(), Yb.row(k));
    }
    Yab = mat_mul(F, Ap, Yb);
  }
  return mat_sub(F, Yc, Yab);
}

}  // namespace mec
