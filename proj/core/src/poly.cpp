#include "mec/poly.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

namespace mec {

namespace {

constexpr std::size_t kNaiveMulCutoff = 32;
constexpr std::size_t kTreeCutoff = 16;

std::vector<Fp> mul_naive(const FieldContext& F, const std::vector<Fp>& a,
                          const std::vector<Fp>& b) {
  std::vector<Fp> out(a.size() + b.size() - 1, Fp{0});
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].v == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
    }
  }
  return out;
}

std::vector<Fp> mul_karatsuba(const FieldContext& F, std::vector<Fp> a, std::vector<Fp> b) {
  if (std::min(a.size(), b.size()) <= kNaiveMulCutoff) return mul_naive(F, a, b);
  std::size_t h = (std::max(a.size(), b.size()) + 1) / 2;
  std::vector<Fp> a0(a.begin(), a.begin() + std::min(h, a.size()));
  std::vector<Fp> a1(a.begin() + std::min(h, a.size()), a.end());
  std::vector<Fp> b0(b.begin(), b.begin() + std::min(h, b.size()));
  std::vector<Fp> b1(b.begin() + std::min(h, b.size()), b.end());
  if (a1.empty() || b1.empty()) {
    // One operand fits entirely below the split: multiply it against the
    // other operand's halves. Both subcalls shrink strictly.
    const std::vector<Fp>& small = a1.empty() ? a : b;
    const std::vector<Fp>& big0 = a1.empty() ? b0 : a0;
    const std::vector<Fp>& big1 = a1.empty() ? b1 : a1;
    std::vector<Fp> out(a.size() + b.size() - 1, Fp{0});
    auto z0 = mul_karatsuba(F, small, big0);
    for (std::size_t i = 0; i < z0.size(); ++i) out[i] = F.add(out[i], z0[i]);
    if (!big1.empty()) {
      auto z1 = mul_karatsuba(F, small, big1);
      for (std::size_t i = 0; i < z1.size(); ++i) out[i + h] = F.add(out[i + h], z1[i]);
    }
    return out;
  }
  auto z0 = mul_karatsuba(F, a0, b0);
  auto z2 = mul_karatsuba(F, a1, b1);
  std::vector<Fp> sa(std::max(a0.size(), a1.size()), Fp{0});
  std::vector<Fp> sb(std::max(b0.size(), b1.size()), Fp{0});
  for (std::size_t i = 0; i < a0.size(); ++i) sa[i] = a0[i];
  for (std::size_t i = 0; i < a1.size(); ++i) sa[i] = F.add(sa[i], a1[i]);
  for (std::size_t i = 0; i < b0.size(); ++i) sb[i] = b0[i];
  for (std::size_t i = 0; i < b1.size(); ++i) sb[i] = F.add(sb[i], b1[i]);
  auto z1 = mul_karatsuba(F, sa, sb);
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] = F.sub(z1[i], z0[i]);
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] = F.sub(z1[i], z2[i]);
  std::vector<Fp> out(a.size() + b.size() - 1, Fp{0});
  for (std::size_t i = 0; i < z0.size(); ++i) out[i] = F.add(out[i], z0[i]);
  for (std::size_t i = 0; i < z1.size(); ++i) out[i + h] = F.add(out[i + h], z1[i]);
  for (std::size_t i = 0; i < z2.size(); ++i) out[i + 2 * h] = F.add(out[i + 2 * h], z2[i]);
  return out;
}

void ntt_inplace(const FieldContext& F, std::vector<Fp>& a, bool inverse) {
  const std::size_t n = a.size();
  const unsigned logn = static_cast<unsigned>(std::countr_zero(n));
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  Fp root = F.two_adic_root();
  for (unsigned k = logn; k < F.two_adicity(); ++k) root = F.mul(root, root);
  if (inverse) root = F.inv(root);
  std::vector<Fp> ws(n / 2);
  for (unsigned len = 2; len <= n; len <<= 1) {
    Fp wlen = root;
    for (std::size_t step = len; step < n; step <<= 1) wlen = F.mul(wlen, wlen);
    ws[0] = F.one();
    for (std::size_t i = 1; i < len / 2; ++i) ws[i] = F.mul(ws[i - 1], wlen);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t j = 0; j < len / 2; ++j) {
        Fp u = a[i + j];
        Fp v = F.mul(a[i + j + len / 2], ws[j]);
        a[i + j] = F.add(u, v);
        a[i + j + len / 2] = F.sub(u, v);
      }
    }
  }
  if (inverse) {
    Fp ninv = F.inv(F.from_uint(n));
    for (auto& x : a) x = F.mul(x, ninv);
  }
}

}  // namespace

Poly poly_add(const FieldContext& F, const Poly& a, const Poly& b) {
  std::vector<Fp> c(std::max(a.coeffs().size(), b.coeffs().size()), Fp{0});
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.add(a.coeff(i), b.coeff(i));
  return Poly(std::move(c));
}

Poly poly_sub(const FieldContext& F, const Poly& a, const Poly& b) {
  std::vector<Fp> c(std::max(a.coeffs().size(), b.coeffs().size()), Fp{0});
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = F.sub(a.coeff(i), b.coeff(i));
  return Poly(std::move(c));
}

Poly poly_mul_karatsuba(const FieldContext& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  return Poly(mul_karatsuba(F, a.coeffs(), b.coeffs()));
}

Poly poly_mul_ntt(const FieldContext& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::size_t rlen = a.coeffs().size() + b.coeffs().size() - 1;
  std::size_t n = std::bit_ceil(rlen);
  if (F.two_adicity() >= 64 || n > (std::size_t{1} << F.two_adicity())) {
    throw OrderTooSmall("transform length exceeds the 2-adic capacity of p-1");
  }
  std::vector<Fp> fa(a.coeffs());
  std::vector<Fp> fb(b.coeffs());
  fa.resize(n, Fp{0});
  fb.resize(n, Fp{0});
  ntt_inplace(F, fa, false);
  ntt_inplace(F, fb, false);
  for (std::size_t i = 0; i < n; ++i) fa[i] = F.mul(fa[i], fb[i]);
  ntt_inplace(F, fa, true);
  fa.resize(rlen);
  return Poly(std::move(fa));
}

Poly poly_mul(const FieldContext& F, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::size_t rlen = a.coeffs().size() + b.coeffs().size() - 1;
  bool ntt_fits = F.two_adicity() < 64 && std::bit_ceil(rlen) <= (std::size_t{1} << F.two_adicity());
  if (ntt_fits && rlen > 2 * kNaiveMulCutoff) return poly_mul_ntt(F, a, b);
  return poly_mul_karatsuba(F, a, b);
}

std::pair<Poly, Poly> poly_divrem(const FieldContext& F, const Poly& f, const Poly& g) {
  if (g.is_zero()) throw ZeroPolynomial("division by the zero polynomial");
  if (f.degree() < g.degree()) return {Poly(), f};
  std::vector<Fp> rem(f.coeffs());
  std::size_t dg = static_cast<std::size_t>(g.degree());
  std::vector<Fp> quot(rem.size() - dg, Fp{0});
  Fp lcinv = F.inv(g.leading());
  for (std::size_t i = rem.size(); i-- > dg;) {
    if (rem[i].v == 0) continue;
    Fp q = F.mul(rem[i], lcinv);
    quot[i - dg] = q;
    for (std::size_t j = 0; j <= dg; ++j) {
      rem[i - dg + j] = F.sub(rem[i - dg + j], F.mul(q, g.coeff(j)));
    }
  }
  rem.resize(dg);
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly poly_gcd(const FieldContext& F, const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    auto [q, r] = poly_divrem(F, x, y);
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  Fp lcinv = F.inv(x.leading());
  std::vector<Fp> c(x.coeffs());
  for (auto& ci : c) ci = F.mul(ci, lcinv);
  return Poly(std::move(c));
}

Fp poly_eval(const FieldContext& F, const Poly& f, Fp x) {
  Fp acc{0};
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    acc = F.add(F.mul(acc, x), f.coeff(i));
  }
  return acc;
}

Poly min_poly(const FieldContext& F, const std::vector<Fp>& seq, std::size_t s) {
  if (seq.size() != 2 * s) throw ShapeMismatch("sequence length must be 2s");
  // Berlekamp-Massey. C is the connection polynomial with C(0) = 1.
  std::vector<Fp> C{F.one()}, B{F.one()};
  std::size_t L = 0, m = 1;
  Fp b = F.one();
  for (std::size_t n = 0; n < seq.size(); ++n) {
    Fp d = seq[n];
    for (std::size_t i = 1; i <= L && i < C.size(); ++i) {
      d = F.add(d, F.mul(C[i], seq[n - i]));
    }
    if (d.v == 0) {
      ++m;
    } else if (2 * L <= n) {
      auto T = C;
      Fp coef = F.mul(d, F.inv(b));
      if (C.size() < B.size() + m) C.resize(B.size() + m, Fp{0});
      for (std::size_t i = 0; i < B.size(); ++i) {
        C[i + m] = F.sub(C[i + m], F.mul(coef, B[i]));
      }
      L = n + 1 - L;
      B = std::move(T);
      b = d;
      m = 1;
    } else {
      Fp coef = F.mul(d, F.inv(b));
      if (C.size() < B.size() + m) C.resize(B.size() + m, Fp{0});
      for (std::size_t i = 0; i < B.size(); ++i) {
        C[i + m] = F.sub(C[i + m], F.mul(coef, B[i]));
      }
      ++m;
    }
  }
  // Gamma(z) = z^L * C(1/z): reverse the first L+1 connection coefficients.
  std::vector<Fp> g(L + 1, Fp{0});
  for (std::size_t i = 0; i <= L; ++i) g[L - i] = i < C.size() ? C[i] : Fp{0};
  return Poly(std::move(g));
}

Poly inv_series(const FieldContext& F, const Poly& f, std::size_t k) {
  if (f.is_zero() || f.coeff(0).v == 0) throw DivisionByZero("series inverse needs f(0) != 0");
  if (k == 0) return Poly();
  std::vector<Fp> g{F.inv(f.coeff(0))};
  std::size_t prec = 1;
  while (prec < k) {
    prec = std::min(prec * 2, k);
    // g <- g*(2 - f*g) mod x^prec
    Poly fg = poly_mul(F, Poly(std::vector<Fp>(f.coeffs().begin(),
                                               f.coeffs().begin() + std::min(prec, f.coeffs().size()))),
                       Poly(g));
    std::vector<Fp> t(prec, Fp{0});
    for (std::size_t i = 0; i < prec; ++i) t[i] = F.neg(fg.coeff(i));
    t[0] = F.add(t[0], F.from_uint(2));
    Poly gg = poly_mul(F, Poly(g), Poly(std::move(t)));
    g.assign(prec, Fp{0});
    for (std::size_t i = 0; i < prec; ++i) g[i] = gg.coeff(i);
  }
  return Poly(std::move(g));
}

ProductTree build_product_tree(const FieldContext& F, const std::vector<Poly>& leaves) {
  if (leaves.empty()) throw EmptyInput("product tree needs at least one leaf");
  for (const auto& l : leaves) {
    if (l.is_zero()) throw ZeroPolynomial("zero leaf in product tree");
  }
  ProductTree t;
  t.levels_.push_back(leaves);
  while (t.levels_.back().size() > 1) {
    const auto& prev = t.levels_.back();
    std::vector<Poly> next;
    next.reserve((prev.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < prev.size(); i += 2) {
      next.push_back(poly_mul(F, prev[i], prev[i + 1]));
    }
    if (prev.size() % 2) next.push_back(prev.back());
    t.levels_.push_back(std::move(next));
  }
  return t;
}

std::vector<Fp> multipoint_eval(const FieldContext& F, const Poly& f,
                                const std::vector<Fp>& points) {
  std::vector<Fp> out(points.size(), Fp{0});
  if (points.empty() || f.is_zero()) return out;
  if (points.size() < kTreeCutoff) {
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = poly_eval(F, f, points[i]);
    return out;
  }
  std::vector<Poly> leaves;
  leaves.reserve(points.size());
  for (Fp x : points) leaves.push_back(Poly::linear_root(F, x));
  ProductTree tree = build_product_tree(F, leaves);
  const auto& levels = tree.levels();
  std::vector<std::vector<Poly>> rems(levels.size());
  rems.back().push_back(poly_divrem(F, f, tree.root()).second);
  for (std::size_t k = levels.size() - 1; k-- > 0;) {
    rems[k].resize(levels[k].size());
    for (std::size_t i = 0; i < levels[k].size(); ++i) {
      const Poly& parent = rems[k + 1][i / 2];
      // The last node of an odd level was promoted verbatim; its parent
      // remainder already has the right degree.
      bool promoted = (levels[k].size() % 2 == 1) && (i + 1 == levels[k].size());
      if (promoted) {
        rems[k][i] = parent;
      } else {
        rems[k][i] = poly_divrem(F, parent, levels[k][i]).second;
      }
    }
  }
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = rems[0][i].coeff(0);
  return out;
}

CoprimeBasis coprime_basis(const FieldContext& F, const std::vector<Poly>& polys) {
  if (polys.empty()) throw EmptyInput("coprime basis of an empty set");
  for (const auto& f : polys) {
    if (f.is_zero()) throw ZeroPolynomial("zero polynomial in coprime basis input");
  }
  auto monic = [&](const Poly& f) {
    Fp lcinv = F.inv(f.leading());
    std::vector<Fp> c(f.coeffs());
    for (auto& ci : c) ci = F.mul(ci, lcinv);
    return Poly(std::move(c));
  };

  // Factor refinement with a worklist. Basis stays pairwise coprime: a split
  // replaces basis[i] by g = gcd(f, basis[i]) (g divides the old element, so
  // coprimality with the rest is preserved), queues the cofactor basis[i]/g,
  // and keeps scanning with f/g. Not advancing past a split slot resolves
  // repeated factors in place. Every split lowers total degree, so this stops.
  std::vector<Poly> basis;
  std::vector<Poly> work;
  for (const auto& f : polys) {
    if (f.degree() < 1) continue;
    Poly mf = monic(f);
    if (std::find(work.begin(), work.end(), mf) == work.end()) work.push_back(std::move(mf));
  }
  while (!work.empty()) {
    Poly f = std::move(work.back());
    work.pop_back();
    std::size_t i = 0;
    while (i < basis.size() && f.degree() >= 1) {
      Poly g = poly_gcd(F, f, basis[i]);
      if (g.degree() < 1) {
        ++i;
        continue;
      }
      Poly qb = poly_divrem(F, basis[i], g).first;
      Poly qf = poly_divrem(F, f, g).first;
      basis[i] = std::move(g);
      if (qb.degree() >= 1) work.push_back(std::move(qb));
      f = std::move(qf);
    }
    if (f.degree() >= 1) basis.push_back(std::move(f));
  }

  CoprimeBasis out;
  out.basis = std::move(basis);
  out.exponents.reserve(polys.size());
  for (const auto& f : polys) {
    std::vector<std::uint32_t> row(out.basis.size(), 0);
    if (f.degree() >= 1) {
      Poly rest = monic(f);
      for (std::size_t j = 0; j < out.basis.size(); ++j) {
        while (rest.degree() >= out.basis[j].degree()) {
          auto [q, r] = poly_divrem(F, rest, out.basis[j]);
          if (!r.is_zero()) break;
          rest = std::move(q);
          ++row[j];
        }
      }
    }
    out.exponents.push_back(std::move(row));
  }
  return out;
}

std::vector<Fp> tvand_apply_naive(const FieldContext& F,
                                  const std::vector<std::pair<std::uint64_t, Fp>>& support,
                                  Fp theta, std::size_t count) {
  std::vector<Fp> out(count, Fp{0});
  for (const auto& [e, c] : support) {
    if (c.v == 0) continue;
    Fp v = F.pow(theta, e);
    Fp pw = F.one();
    for (std::size_t j = 0; j < count; ++j) {
      out[j] = F.add(out[j], F.mul(c, pw));
      pw = F.mul(pw, v);
    }
  }
  return out;
}

std::vector<Fp> tvand_apply(const FieldContext& F,
                            const std::vector<std::pair<std::uint64_t, Fp>>& support,
                            Fp theta, std::size_t count) {
  {
    std::unordered_set<std::uint64_t> seen;
    for (const auto& [e, c] : support) {
      if (!seen.insert(e).second) throw DuplicateExponent("repeated exponent in support");
    }
  }
  if (count == 0) return {};
  if (support.size() < kTreeCutoff || count < kTreeCutoff) {
    return tvand_apply_naive(F, support, theta, count);
  }
  // sum_j out_j x^j = N(x)/D(x) with D = prod_i (1 - v_i x) and
  // N = sum_i c_i prod_{k != i} (1 - v_k x); combine N alongside the tree.
  std::vector<Poly> dleaf;
  std::vector<Poly> nleaf;
  dleaf.reserve(support.size());
  nleaf.reserve(support.size());
  for (const auto& [e, c] : support) {
    Fp v = F.pow(theta, e);
    dleaf.push_back(Poly(std::vector<Fp>{F.one(), F.neg(v)}));
    nleaf.push_back(Poly::constant(c));
  }
  while (dleaf.size() > 1) {
    std::vector<Poly> dnext, nnext;
    for (std::size_t i = 0; i + 1 < dleaf.size(); i += 2) {
      nnext.push_back(poly_add(F, poly_mul(F, nleaf[i], dleaf[i + 1]),
                               poly_mul(F, nleaf[i + 1], dleaf[i])));
      dnext.push_back(poly_mul(F, dleaf[i], dleaf[i + 1]));
    }
    if (dleaf.size() % 2) {
      dnext.push_back(dleaf.back());
      nnext.push_back(nleaf.back());
    }
    dleaf = std::move(dnext);
    nleaf = std::move(nnext);
  }
  Poly series = poly_mul(F, nleaf[0], inv_series(F, dleaf[0], count));
  std::vector<Fp> out(count, Fp{0});
  for (std::size_t j = 0; j < count; ++j) out[j] = series.coeff(j);
  return out;
}

std::vector<Fp> tvand_solve(const FieldContext& F, const std::vector<Fp>& roots,
                            const std::vector<Fp>& rhs) {
  if (roots.size() != rhs.size()) throw ShapeMismatch("roots/rhs length mismatch");
  const std::size_t t = roots.size();
  if (t == 0) return {};
  {
    std::unordered_set<std::uint64_t> seen;
    for (Fp v : roots) {
      if (!seen.insert(v.v).second) throw SingularSystem("repeated root");
    }
  }
  bool has_zero_root = std::any_of(roots.begin(), roots.end(), [](Fp v) { return v.v == 0; });
  if (t < kTreeCutoff || has_zero_root) {
    // Gaussian elimination on the t x t moment matrix M[j][i] = roots_i^j.
    std::vector<std::vector<Fp>> M(t, std::vector<Fp>(t + 1, Fp{0}));
    for (std::size_t i = 0; i < t; ++i) {
      Fp pw = F.one();
      for (std::size_t j = 0; j < t; ++j) {
        M[j][i] = pw;
        pw = F.mul(pw, roots[i]);
      }
    }
    for (std::size_t j = 0; j < t; ++j) M[j][t] = rhs[j];
    for (std::size_t col = 0; col < t; ++col) {
      std::size_t piv = col;
      while (piv < t && M[piv][col].v == 0) ++piv;
      if (piv == t) throw SingularSystem("singular moment matrix");
      std::swap(M[piv], M[col]);
      Fp pinv = F.inv(M[col][col]);
      for (std::size_t j2 = col; j2 <= t; ++j2) M[col][j2] = F.mul(M[col][j2], pinv);
      for (std::size_t r = 0; r < t; ++r) {
        if (r == col || M[r][col].v == 0) continue;
        Fp f = M[r][col];
        for (std::size_t j2 = col; j2 <= t; ++j2) {
          M[r][j2] = F.sub(M[r][j2], F.mul(f, M[col][j2]));
        }
      }
    }
    std::vector<Fp> a(t);
    for (std::size_t i = 0; i < t; ++i) a[i] = M[i][t];
    return a;
  }

  // With D(x) = prod (1 - v_i x) and N = (sum_j rhs_j x^j) D mod x^t, the
  // partial-fraction residues give a_i = -v_i N(1/v_i) / D'(1/v_i).
  std::vector<Poly> leaves;
  leaves.reserve(t);
  for (Fp v : roots) leaves.push_back(Poly(std::vector<Fp>{F.one(), F.neg(v)}));
  Poly D = build_product_tree(F, leaves).root();
  Poly Y = poly_mul(F, Poly(std::vector<Fp>(rhs)), D);
  std::vector<Fp> ncoef(t, Fp{0});
  for (std::size_t j = 0; j < t; ++j) ncoef[j] = Y.coeff(j);
  Poly N(std::move(ncoef));
  std::vector<Fp> dprime(t, Fp{0});
  for (std::size_t j = 1; j <= t; ++j) dprime[j - 1] = F.mul(F.from_uint(j), D.coeff(j));
  Poly Dp(std::move(dprime));

  // Batch inversion of the roots.
  std::vector<Fp> pref(t + 1);
  pref[0] = F.one();
  for (std::size_t i = 0; i < t; ++i) pref[i + 1] = F.mul(pref[i], roots[i]);
  Fp run = F.inv(pref[t]);
  std::vector<Fp> w(t);
  for (std::size_t i = t; i-- > 0;) {
    w[i] = F.mul(run, pref[i]);
    run = F.mul(run, roots[i]);
  }
  auto nvals = multipoint_eval(F, N, w);
  auto dvals = multipoint_eval(F, Dp, w);
  std::vector<Fp> a(t);
  for (std::size_t i = 0; i < t; ++i) {
    if (dvals[i].v == 0) throw SingularSystem("derivative vanished at a node");
    a[i] = F.neg(F.mul(roots[i], F.mul(nvals[i], F.inv(dvals[i]))));
  }
  return a;
}

}  // namespace mec
