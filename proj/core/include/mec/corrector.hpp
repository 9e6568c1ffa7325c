#pragma once

#include <random>

#include "mec/matrix.hpp"
#include "mec/probe.hpp"

namespace mec {

struct CorrectionReport {
  SparseMatrix errors;
  std::size_t iterations = 0;
  std::uint64_t final_k = 1;
  std::size_t orientation_flips = 0;
  bool fell_back = false;
  double eps_used = 0.0;   // caller's overall failure bound
  double probe_eps = 0.0;  // per-probe split of eps_used
};

// Error correction for a claimed product: finds sparse E with AB = C - E,
// with probability at least 1 - eps. Cost scales with the actual error count;
// the give-up path recomputes C - AB densely (then E is exact).
// Requires order(theta) >= max(rows, cols) on the supplied field context.
CorrectionReport multiply_ec(const FieldContext& F, const Matrix& A, const Matrix& B,
                             const Matrix& C, double eps, std::mt19937_64& rng);

// Error correction for a claimed inverse: finds sparse E with A^{-1} = B + E,
// with probability at least 1 - eps. SingularInput surfaces only if the
// give-up path has to invert A densely and fails.
CorrectionReport inverse_ec(const FieldContext& F, const Matrix& A, const Matrix& B,
                            double eps, std::mt19937_64& rng);

// One-probe Freivalds checks: true means "no discrepancy seen" (wrong with
// probability at most eps); false is a certificate of inequality.
bool verify_product(const FieldContext& F, const Matrix& A, const Matrix& B, const Matrix& C,
                    double eps, std::mt19937_64& rng);
bool verify_inverse(const FieldContext& F, const Matrix& A, const Matrix& B, double eps,
                    std::mt19937_64& rng);

struct IndependentRowSelection {
  std::vector<std::size_t> row_indices;  // strictly increasing
  Matrix x_inverse;                      // inverse of the selected square submatrix
};

// Lexicographically minimal set of r linearly independent rows of the
// n x r matrix Ap, plus the inverse of that square submatrix.
// Throws RankDeficient when rank(Ap) < r.
IndependentRowSelection select_independent_rows(const FieldContext& F, const Matrix& Ap);

// Dense Gauss-Jordan inverse; throws SingularInput.
Matrix gauss_inverse(const FieldContext& F, const Matrix& A);

}  // namespace mec
