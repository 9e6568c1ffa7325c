#pragma once

#include <functional>
#include <random>
#include <vector>

#include "mec/matrix.hpp"

namespace mec {

// A matrix known only through right-multiplication: apply maps a cols x l
// block V to the rows x l block MV. apply must be linear in V.
struct BlackBox {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::function<Matrix(const Matrix&)> apply;
};

struct ProbeResult {
  std::vector<std::size_t> indices;  // strictly increasing
  std::size_t column_count = 0;      // l actually used (after the m*n cap)
};

// Monte Carlo nonzero-row detection: one apply of a random cols x l block
// with l = ceil(log_p(rows/eps)), capped at rows*cols. Every returned index
// is a nonzero row; with probability >= 1-eps all nonzero rows are returned.
ProbeResult find_nonzero_rows(const FieldContext& F, const BlackBox& box, double eps,
                              std::mt19937_64& rng);

}  // namespace mec
