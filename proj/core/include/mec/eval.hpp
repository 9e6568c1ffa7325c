#pragma once

#include "mec/matrix.hpp"

namespace mec {

// Y = (Cp - Ap*B) * V for the n x 2s evaluation matrix V_{i,j} = theta^{ij},
// never forming Ap*B or V densely: rows of Cp and B are evaluated through
// their sparse supports, and the single rectangular product Ap*(BV) goes
// through plan_mul. Row i of the result is the row polynomial of Cp - Ap*B
// evaluated at 1, theta, ..., theta^{2s-1}.
Matrix diff_eval(const FieldContext& F, const Matrix& Ap, const Matrix& B, const Matrix& Cp,
                 std::size_t s);

}  // namespace mec
