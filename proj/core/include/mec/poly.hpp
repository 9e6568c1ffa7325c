#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mec/field.hpp"

namespace mec {

// Dense univariate polynomial over GF(p). Coefficients ascending by degree,
// trailing zeros trimmed; an empty vector is the zero polynomial (degree -1).
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Fp> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(Fp c) { return Poly(std::vector<Fp>{c}); }
  // z - root
  static Poly linear_root(const FieldContext& F, Fp root) {
    return Poly(std::vector<Fp>{F.neg(root), F.one()});
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  Fp coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Fp{0}; }
  Fp leading() const { return c_.empty() ? Fp{0} : c_.back(); }
  const std::vector<Fp>& coeffs() const { return c_; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a.c_ == b.c_); }

 private:
  void trim() {
    while (!c_.empty() && c_.back().v == 0) c_.pop_back();
  }
  std::vector<Fp> c_;
};

Poly poly_add(const FieldContext& F, const Poly& a, const Poly& b);
Poly poly_sub(const FieldContext& F, const Poly& a, const Poly& b);

// Product. Dispatches to the NTT when p-1 has enough 2-adic headroom for the
// result length, Karatsuba otherwise. Both specialized entry points are
// exposed so they can be cross-checked.
Poly poly_mul(const FieldContext& F, const Poly& a, const Poly& b);
Poly poly_mul_karatsuba(const FieldContext& F, const Poly& a, const Poly& b);
// Throws OrderTooSmall when 2^two_adicity < result length.
Poly poly_mul_ntt(const FieldContext& F, const Poly& a, const Poly& b);

// Quotient and remainder; throws ZeroPolynomial when g = 0.
std::pair<Poly, Poly> poly_divrem(const FieldContext& F, const Poly& f, const Poly& g);

// Monic gcd; gcd(0, 0) = 0.
Poly poly_gcd(const FieldContext& F, const Poly& a, const Poly& b);

Fp poly_eval(const FieldContext& F, const Poly& f, Fp x);

// Monic minimal polynomial of the linearly recurrent sequence seq (length 2s),
// via Berlekamp-Massey. All-zero input yields the constant 1. The degree is
// at most s whenever some recurrence of order <= s generates seq.
Poly min_poly(const FieldContext& F, const std::vector<Fp>& seq, std::size_t s);

// Power series inverse of f mod x^k; throws DivisionByZero when f(0) = 0.
Poly inv_series(const FieldContext& F, const Poly& f, std::size_t k);

// Balanced product tree. levels().front() holds the leaves, levels().back()
// the single root. An odd node at some level is promoted unchanged, so the
// children of node i at level k+1 sit at indices 2i and 2i+1 of level k.
class ProductTree {
 public:
  const std::vector<std::vector<Poly>>& levels() const { return levels_; }
  const Poly& root() const { return levels_.back().front(); }
  std::size_t leaf_count() const { return levels_.front().size(); }

 private:
  friend ProductTree build_product_tree(const FieldContext&, const std::vector<Poly>&);
  std::vector<std::vector<Poly>> levels_;
};

// Throws EmptyInput on no leaves, ZeroPolynomial on a zero leaf.
ProductTree build_product_tree(const FieldContext& F, const std::vector<Poly>& leaves);

// f(points[i]) for every i. Horner below 16 points, product tree + remainder
// tree beyond.
std::vector<Fp> multipoint_eval(const FieldContext& F, const Poly& f,
                                const std::vector<Fp>& points);

// Pairwise-coprime refinement of a set of polynomials: basis holds monic,
// nonconstant, pairwise coprime polynomials, and exponents[i][j] gives the
// multiplicity of basis[j] in polys[i], so that polys[i] equals its leading
// coefficient times prod_j basis[j]^exponents[i][j].
struct CoprimeBasis {
  std::vector<Poly> basis;
  std::vector<std::vector<std::uint32_t>> exponents;
};
CoprimeBasis coprime_basis(const FieldContext& F, const std::vector<Poly>& polys);

// Evaluations sum_i c_i * (theta^{e_i})^j for j = 0..count-1, from sparse
// support {(e_i, c_i)}. Product-tree + power-series method once both the
// support and count reach 16, double loop below. Throws DuplicateExponent.
std::vector<Fp> tvand_apply(const FieldContext& F,
                            const std::vector<std::pair<std::uint64_t, Fp>>& support,
                            Fp theta, std::size_t count);
std::vector<Fp> tvand_apply_naive(const FieldContext& F,
                                  const std::vector<std::pair<std::uint64_t, Fp>>& support,
                                  Fp theta, std::size_t count);

// Solves sum_i a_i v_i^j = rhs_j (j = 0..t-1) for a, where v = roots must be
// distinct. Gaussian elimination below size 16, the product-tree method
// beyond. Throws SingularSystem on repeated roots, ShapeMismatch on length
// disagreement.
std::vector<Fp> tvand_solve(const FieldContext& F, const std::vector<Fp>& roots,
                            const std::vector<Fp>& rhs);

}  // namespace mec
