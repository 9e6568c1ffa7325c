#include "mec/corrector.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <stdexcept>
#include <tuple>
#include <unordered_set>
#include <utility>

#include "mec/errors.hpp"
#include "mec/eval.hpp"
#include "mec/sparse_interp.hpp"

namespace mec {

namespace {

std::uint64_t ceil_log2_u128(unsigned __int128 x) {
  if (x <= 1) return 0;
  std::uint64_t b = 0;
  unsigned __int128 v = x - 1;
  while (v > 0) {
    v >>= 1;
    ++b;
  }
  return b;
}

std::size_t budget_columns(std::uint64_t k, std::uint64_t committed, std::size_t r,
                           std::size_t n_cur) {
  // s = ceil(2(k - committed)/r), clamped to [1, n_cur]. The lower clamp keeps
  // progress possible when committed entries already meet or exceed k.
  std::uint64_t rem = k > committed ? k - committed : 0;
  std::uint64_t s = (2 * rem + r - 1) / r;
  if (s < 1) s = 1;
  if (s > n_cur) s = static_cast<std::uint64_t>(n_cur);
  return static_cast<std::size_t>(s);
}

struct CommitLog {
  std::vector<std::tuple<std::size_t, std::size_t, Fp>> entries;
};

}  // namespace

CorrectionReport multiply_ec(const FieldContext& F, const Matrix& A, const Matrix& B,
                             const Matrix& C, double eps, std::mt19937_64& rng) {
  if (B.rows() != A.cols() || C.rows() != A.rows() || C.cols() != B.cols())
    throw DimensionMismatch("multiply_ec: A, B, C shapes are inconsistent");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("multiply_ec: eps must lie in (0, 1)");
  const std::size_t m0 = C.rows();
  const std::size_t n0 = C.cols();
  if (F.theta_order() < std::max(m0, n0))
    throw OrderTooSmall("multiply_ec: theta order below max(rows, cols)");

  CorrectionReport rep;
  rep.eps_used = eps;
  const unsigned __int128 cells = static_cast<unsigned __int128>(m0) * n0;
  rep.probe_eps = eps / (4.0 * static_cast<double>(ceil_log2_u128(cells)) + 1.0);

  // Working copies in the current orientation; Cw tracks C - E.
  Matrix Aw = A;
  Matrix Bw = B;
  Matrix Cw = C;
  SparseMatrix E(m0, n0);
  bool flipped = false;
  std::uint64_t k = 1;

  std::map<std::size_t, CandidateSet> cand_cache;
  auto candidates = [&](std::size_t width) -> const CandidateSet& {
    auto it = cand_cache.find(width);
    if (it == cand_cache.end())
      it = cand_cache.emplace(width, CandidateSet::full_range(F, width)).first;
    return it->second;
  };

  auto row_box = [&]() {
    return BlackBox{Cw.rows(), Cw.cols(), [&](const Matrix& V) {
                      return mat_sub(F, mat_mul(F, Cw, V),
                                     mat_mul(F, Aw, mat_mul(F, Bw, V)));
                    }};
  };
  // Same residual probed from the left; nonzero rows of the result are the
  // nonzero columns of C - E - AB.
  auto col_box = [&]() {
    return BlackBox{Cw.cols(), Cw.rows(), [&](const Matrix& V) {
                      Matrix Vt = transpose(V);
                      Matrix lhs = mat_mul(F, Vt, Cw);
                      Matrix rhs = mat_mul(F, mat_mul(F, Vt, Aw), Bw);
                      return transpose(mat_sub(F, lhs, rhs));
                    }};
  };

  ProbeResult J = find_nonzero_rows(F, row_box(), rep.probe_eps, rng);
  while (!J.indices.empty()) {
    ProbeResult Jc = find_nonzero_rows(F, col_box(), rep.probe_eps, rng);
    if (Jc.indices.size() > J.indices.size()) {
      Matrix new_a = transpose(Bw);
      Bw = transpose(Aw);
      Aw = std::move(new_a);
      Cw = transpose(Cw);
      E = E.transposed();
      J = std::move(Jc);
      flipped = !flipped;
      ++rep.orientation_flips;
    }

    const std::size_t r = J.indices.size();
    const std::size_t n_cur = Cw.cols();
    const std::size_t s = budget_columns(k, E.nnz(), r, n_cur);

    Matrix Ap = submatrix_rows(Aw, J.indices);
    Matrix Cp = submatrix_rows(Cw, J.indices);
    Matrix Y = diff_eval(F, Ap, Bw, Cp, s);
    auto rows = multi_sparse_interp(F, r, n_cur, s, candidates(n_cur), Y);

    CommitLog log;
    for (std::size_t idx = 0; idx < r; ++idx) {
      if (!rows[idx]) continue;
      const std::size_t row = J.indices[idx];
      for (const auto& [expo, coeff] : rows[idx]->terms) {
        const std::size_t col = static_cast<std::size_t>(expo);
        E.add_at(row, col, coeff, F);
        Cw.row(row)[col] = F.sub(Cw.row(row)[col], coeff);
        log.entries.emplace_back(row, col, coeff);
      }
    }

    ProbeResult Jn = find_nonzero_rows(F, row_box(), rep.probe_eps, rng);
    if (2 * Jn.indices.size() > r) {
      k *= 2;
      const unsigned __int128 giveup =
          2 * static_cast<unsigned __int128>(n_cur) * Jn.indices.size();
      if (static_cast<unsigned __int128>(k) >= giveup) {
        Matrix full = mat_sub(F, C, mat_mul(F, A, B));
        rep.errors = SparseMatrix::from_dense(full);
        rep.fell_back = true;
        rep.final_k = k;
        ++rep.iterations;
        return rep;
      }
    }

    if (!Jn.indices.empty() && !log.entries.empty()) {
      // Rows still flagged keep none of this round's commits.
      std::unordered_set<std::size_t> dirty(Jn.indices.begin(), Jn.indices.end());
      for (const auto& [row, col, val] : log.entries) {
        if (!dirty.count(row)) continue;
        E.add_at(row, col, F.neg(val), F);
        Cw.row(row)[col] = F.add(Cw.row(row)[col], val);
      }
    }

    J = std::move(Jn);
    ++rep.iterations;
  }

  rep.errors = flipped ? E.transposed() : E;
  rep.final_k = k;
  return rep;
}

CorrectionReport inverse_ec(const FieldContext& F, const Matrix& A, const Matrix& B,
                            double eps, std::mt19937_64& rng) {
  const std::size_t n = A.rows();
  if (A.cols() != n || B.rows() != n || B.cols() != n)
    throw DimensionMismatch("inverse_ec: A and B must be square of equal size");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("inverse_ec: eps must lie in (0, 1)");
  if (F.theta_order() < n) throw OrderTooSmall("inverse_ec: theta order below n");

  CorrectionReport rep;
  rep.eps_used = eps;
  rep.probe_eps = eps / (8.0 * static_cast<double>(ceil_log2_u128(n)) + 1.0);

  // Bw tracks B + E in the current orientation.
  Matrix Aw = A;
  Matrix Bw = B;
  SparseMatrix E(n, n);
  bool flipped = false;
  std::uint64_t k = 1;
  const CandidateSet cand = CandidateSet::full_range(F, n);

  auto row_box = [&]() {
    return BlackBox{n, n, [&](const Matrix& V) {
                      return mat_sub(F, V, mat_mul(F, Bw, mat_mul(F, Aw, V)));
                    }};
  };
  // Left-probed residual of I - A(B+E); nonzero rows of the result are the
  // nonzero columns of the inverse-side error.
  auto col_box = [&]() {
    return BlackBox{n, n, [&](const Matrix& V) {
                      Matrix Vt = transpose(V);
                      Matrix prod = mat_mul(F, mat_mul(F, Vt, Aw), Bw);
                      return mat_sub(F, V, transpose(prod));
                    }};
  };

  auto fallback = [&]() {
    Matrix inv = gauss_inverse(F, A);
    rep.errors = SparseMatrix::from_dense(mat_sub(F, inv, B));
    rep.fell_back = true;
    rep.final_k = k;
    ++rep.iterations;
    return rep;
  };

  ProbeResult J = find_nonzero_rows(F, row_box(), rep.probe_eps, rng);
  while (!J.indices.empty()) {
    ProbeResult Jc = find_nonzero_rows(F, col_box(), rep.probe_eps, rng);
    if (Jc.indices.size() > J.indices.size()) {
      Matrix new_a = transpose(Aw);
      Aw = std::move(new_a);
      Bw = transpose(Bw);
      E = E.transposed();
      J = std::move(Jc);
      flipped = !flipped;
      ++rep.orientation_flips;
    }

    const std::size_t r = J.indices.size();
    Matrix Ap = submatrix_cols(Aw, J.indices);

    IndependentRowSelection sel;
    bool have_sel = true;
    try {
      sel = select_independent_rows(F, Ap);
    } catch (const RankDeficient&) {
      have_sel = false;
    }
    if (!have_sel) {
      // The flagged columns of A are dependent; grow the budget and retry
      // with a fresh probe rather than committing anything this round.
      k *= 2;
      ProbeResult Jn = find_nonzero_rows(F, row_box(), rep.probe_eps, rng);
      const unsigned __int128 giveup =
          2 * static_cast<unsigned __int128>(n) * Jn.indices.size();
      if (!Jn.indices.empty() && static_cast<unsigned __int128>(k) >= giveup)
        return fallback();
      J = std::move(Jn);
      ++rep.iterations;
      continue;
    }

    Matrix Ip(sel.row_indices.size(), n);
    for (std::size_t i = 0; i < sel.row_indices.size(); ++i)
      Ip.row(i)[sel.row_indices[i]] = F.one();
    Matrix App = submatrix_rows(Aw, sel.row_indices);

    const std::size_t s = budget_columns(k, E.nnz(), r, n);
    Matrix Y = diff_eval(F, App, Bw, Ip, s);
    Matrix Yp = mat_mul(F, sel.x_inverse, Y);
    auto rows = multi_sparse_interp(F, r, n, s, cand, Yp);

    CommitLog log;
    for (std::size_t idx = 0; idx < r; ++idx) {
      if (!rows[idx]) continue;
      const std::size_t row = J.indices[idx];
      for (const auto& [expo, coeff] : rows[idx]->terms) {
        const std::size_t col = static_cast<std::size_t>(expo);
        E.add_at(row, col, coeff, F);
        Bw.row(row)[col] = F.add(Bw.row(row)[col], coeff);
        log.entries.emplace_back(row, col, coeff);
      }
    }

    ProbeResult Jn = find_nonzero_rows(F, row_box(), rep.probe_eps, rng);
    if (2 * Jn.indices.size() > r) {
      k *= 2;
      const unsigned __int128 giveup =
          2 * static_cast<unsigned __int128>(n) * Jn.indices.size();
      if (static_cast<unsigned __int128>(k) >= giveup) return fallback();
    }

    if (!Jn.indices.empty() && !log.entries.empty()) {
      std::unordered_set<std::size_t> dirty(Jn.indices.begin(), Jn.indices.end());
      for (const auto& [row, col, val] : log.entries) {
        if (!dirty.count(row)) continue;
        E.add_at(row, col, F.neg(val), F);
        Bw.row(row)[col] = F.sub(Bw.row(row)[col], val);
      }
    }

    J = std::move(Jn);
    ++rep.iterations;
  }

  rep.errors = flipped ? E.transposed() : E;
  rep.final_k = k;
  return rep;
}

bool verify_product(const FieldContext& F, const Matrix& A, const Matrix& B, const Matrix& C,
                    double eps, std::mt19937_64& rng) {
  if (B.rows() != A.cols() || C.rows() != A.rows() || C.cols() != B.cols())
    throw DimensionMismatch("verify_product: A, B, C shapes are inconsistent");
  BlackBox box{C.rows(), C.cols(), [&](const Matrix& V) {
                 return mat_sub(F, mat_mul(F, C, V), mat_mul(F, A, mat_mul(F, B, V)));
               }};
  return find_nonzero_rows(F, box, eps, rng).indices.empty();
}

bool verify_inverse(const FieldContext& F, const Matrix& A, const Matrix& B, double eps,
                    std::mt19937_64& rng) {
  const std::size_t n = A.rows();
  if (A.cols() != n || B.rows() != n || B.cols() != n)
    throw DimensionMismatch("verify_inverse: A and B must be square of equal size");
  BlackBox box{n, n, [&](const Matrix& V) {
                 return mat_sub(F, V, mat_mul(F, B, mat_mul(F, A, V)));
               }};
  return find_nonzero_rows(F, box, eps, rng).indices.empty();
}

IndependentRowSelection select_independent_rows(const FieldContext& F, const Matrix& Ap) {
  const std::size_t n = Ap.rows();
  const std::size_t r = Ap.cols();
  if (r == 0) throw EmptyInput("select_independent_rows: no columns");
  if (n < r) throw RankDeficient("select_independent_rows: fewer rows than columns");

  // Greedy scan in row order gives the lexicographically minimal index set.
  std::vector<std::vector<Fp>> basis;  // rows reduced to echelon form, pivot scaled to 1
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> chosen;
  std::vector<Fp> work(r);

  for (std::size_t i = 0; i < n && chosen.size() < r; ++i) {
    const Fp* src = Ap.row(i);
    std::copy(src, src + r, work.begin());
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Fp coef = work[pivots[b]];
      if (F.is_zero(coef)) continue;
      const auto& red = basis[b];
      for (std::size_t j = 0; j < r; ++j)
        work[j] = F.sub(work[j], F.mul(coef, red[j]));
    }
    std::size_t piv = r;
    for (std::size_t j = 0; j < r; ++j) {
      if (!F.is_zero(work[j])) {
        piv = j;
        break;
      }
    }
    if (piv == r) continue;
    const Fp scale = F.inv(work[piv]);
    for (std::size_t j = 0; j < r; ++j) work[j] = F.mul(work[j], scale);
    basis.push_back(work);
    pivots.push_back(piv);
    chosen.push_back(i);
  }

  if (chosen.size() < r)
    throw RankDeficient("select_independent_rows: column rank below requested size");

  IndependentRowSelection sel;
  sel.row_indices = std::move(chosen);
  sel.x_inverse = gauss_inverse(F, submatrix_rows(Ap, sel.row_indices));
  return sel;
}

Matrix gauss_inverse(const FieldContext& F, const Matrix& A) {
  const std::size_t n = A.rows();
  if (A.cols() != n) throw DimensionMismatch("gauss_inverse: matrix is not square");
  if (n == 0) throw EmptyInput("gauss_inverse: empty matrix");

  Matrix M = A;
  Matrix inv = Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t i = col; i < n; ++i) {
      if (!F.is_zero(M.row(i)[col])) {
        piv = i;
        break;
      }
    }
    if (piv == n) throw SingularInput("gauss_inverse: matrix is singular");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(M.row(piv)[j], M.row(col)[j]);
        std::swap(inv.row(piv)[j], inv.row(col)[j]);
      }
    }
    const Fp scale = F.inv(M.row(col)[col]);
    for (std::size_t j = 0; j < n; ++j) {
      M.row(col)[j] = F.mul(M.row(col)[j], scale);
      inv.row(col)[j] = F.mul(inv.row(col)[j], scale);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      const Fp f = M.row(i)[col];
      if (F.is_zero(f)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        M.row(i)[j] = F.sub(M.row(i)[j], F.mul(f, M.row(col)[j]));
        inv.row(i)[j] = F.sub(inv.row(i)[j], F.mul(f, inv.row(col)[j]));
      }
    }
  }
  return inv;
}

}  // namespace mec
