#include "mec/probe.hpp"

#include <stdexcept>

namespace mec {

ProbeResult find_nonzero_rows(const FieldContext& F, const BlackBox& box, double eps,
                              std::mt19937_64& rng) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");
  ProbeResult out;
  if (box.rows == 0) return out;

  // Smallest l >= 1 with p^l >= rows/eps, capped at rows*cols.
  const long double target = static_cast<long double>(box.rows) / eps;
  std::size_t l = 0;
  long double acc = 1.0L;
  const std::size_t cap = std::max<std::size_t>(1, box.rows * box.cols);
  while (acc < target && l < cap) {
    acc *= static_cast<long double>(F.modulus());
    ++l;
  }
  l = std::max<std::size_t>(1, l);
  out.column_count = l;

  Matrix V(box.cols, l);
  for (std::size_t i = 0; i < box.cols; ++i) {
    Fp* row = V.row(i);
    for (std::size_t j = 0; j < l; ++j) row[j] = F.sample(rng);
  }
  Matrix Y = box.apply(V);
  if (Y.rows() != box.rows || Y.cols() != l) throw DimensionMismatch("black box shape lied");
  for (std::size_t i = 0; i < Y.rows(); ++i) {
    const Fp* row = Y.row(i);
    for (std::size_t j = 0; j < l; ++j) {
      if (row[j].v != 0) {
        out.indices.push_back(i);
        break;
      }
    }
  }
  return out;
}

}  // namespace mec
