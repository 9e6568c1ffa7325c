#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mec/matrix.hpp"
#include "mec/poly.hpp"

namespace mec {

// Exponent candidate set S, with the power table theta^d -> d used to decode
// roots back to exponents. Injectivity of the table is required; a collision
// means order(theta) is too small for the exponent range.
class CandidateSet {
 public:
  CandidateSet(const FieldContext& F, std::vector<std::uint64_t> exponents);
  static CandidateSet full_range(const FieldContext& F, std::uint64_t n);

  std::size_t size() const { return exps_.size(); }
  const std::vector<std::uint64_t>& exponents() const { return exps_; }
  const std::vector<Fp>& points() const { return pts_; }
  std::optional<std::uint64_t> exponent_of(Fp point) const;

 private:
  std::vector<std::uint64_t> exps_;
  std::vector<Fp> pts_;
  std::unordered_map<std::uint64_t, std::uint64_t> lookup_;
};

// Roots-in-candidates of each minpoly: R_i = {a in candidates : G_i(a) = 0},
// computed through a coprime basis and one top-down product-tree walk where a
// node is evaluated only at its parent's surviving roots.
std::vector<std::vector<Fp>> find_roots(const FieldContext& F, const CandidateSet& candidates,
                                        const std::vector<Poly>& minpolys);

// Sparse row polynomial: strictly increasing exponents, nonzero coefficients.
struct SparsePoly {
  std::vector<std::pair<std::uint64_t, Fp>> terms;
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.terms == b.terms; }
};

// nullopt marks a failed recovery (including an all-zero evaluation row,
// indistinguishable from the zero polynomial).
using RowRecovery = std::optional<SparsePoly>;

// Batched Prony recovery of r row polynomials from Y (r x 2s), Y_{i,j} =
// f_i(theta^j). Guaranteed exact for every row with at most s terms, support
// inside the candidate exponents, and degree < n.
std::vector<RowRecovery> multi_sparse_interp(const FieldContext& F, std::size_t r,
                                             std::uint64_t n, std::size_t s,
                                             const CandidateSet& candidates, const Matrix& Y);

}  // namespace mec
