#include "mec/sparse_interp.hpp"

#include <algorithm>

namespace mec {

CandidateSet::CandidateSet(const FieldContext& F, std::vector<std::uint64_t> exponents)
    : exps_(std::move(exponents)) {
  pts_.reserve(exps_.size());
  lookup_.reserve(exps_.size() * 2);
  for (std::uint64_t d : exps_) {
    Fp pw = F.pow(F.theta(), d);
    auto [it, fresh] = lookup_.emplace(pw.v, d);
    if (!fresh) {
      if (it->second == d) throw DuplicateExponent("repeated candidate exponent");
      throw OrderTooSmall("theta powers collide over the candidate exponents");
    }
    pts_.push_back(pw);
  }
}

CandidateSet CandidateSet::full_range(const FieldContext& F, std::uint64_t n) {
  std::vector<std::uint64_t> exps(n);
  for (std::uint64_t d = 0; d < n; ++d) exps[d] = d;
  return CandidateSet(F, std::move(exps));
}

std::optional<std::uint64_t> CandidateSet::exponent_of(Fp point) const {
  auto it = lookup_.find(point.v);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<Fp>> find_roots(const FieldContext& F, const CandidateSet& candidates,
                                        const std::vector<Poly>& minpolys) {
  for (const auto& g : minpolys) {
    if (g.is_zero()) throw ZeroPolynomial("zero minimal polynomial");
  }
  std::vector<std::vector<Fp>> out(minpolys.size());
  std::vector<Poly> nonconst;
  std::vector<std::size_t> origin;
  for (std::size_t i = 0; i < minpolys.size(); ++i) {
    if (minpolys[i].degree() >= 1) {
      nonconst.push_back(minpolys[i]);
      origin.push_back(i);
    }
  }
  if (nonconst.empty() || candidates.size() == 0) return out;

  CoprimeBasis cb = coprime_basis(F, nonconst);
  if (cb.basis.empty()) return out;

  // Survivor walk: a point survives at a node iff the node vanishes there.
  ProductTree tree = build_product_tree(F, cb.basis);
  const auto& levels = tree.levels();
  std::vector<std::vector<std::vector<Fp>>> surv(levels.size());
  auto filter_roots = [&](const Poly& g, const std::vector<Fp>& pts) {
    std::vector<Fp> kept;
    if (pts.empty()) return kept;
    auto vals = multipoint_eval(F, g, pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (vals[i].v == 0) kept.push_back(pts[i]);
    }
    return kept;
  };
  surv.back().push_back(filter_roots(tree.root(), candidates.points()));
  for (std::size_t k = levels.size() - 1; k-- > 0;) {
    surv[k].resize(levels[k].size());
    for (std::size_t i = 0; i < levels[k].size(); ++i) {
      const auto& parent_pts = surv[k + 1][i / 2];
      bool promoted = (levels[k].size() % 2 == 1) && (i + 1 == levels[k].size());
      surv[k][i] = promoted ? parent_pts : filter_roots(levels[k][i], parent_pts);
    }
  }

  // Basis elements are pairwise coprime, so per-input root sets are disjoint
  // unions of leaf root sets.
  for (std::size_t idx = 0; idx < nonconst.size(); ++idx) {
    std::vector<Fp>& roots = out[origin[idx]];
    for (std::size_t j = 0; j < cb.basis.size(); ++j) {
      if (cb.exponents[idx][j] >= 1) {
        roots.insert(roots.end(), surv[0][j].begin(), surv[0][j].end());
      }
    }
    std::sort(roots.begin(), roots.end());
  }
  return out;
}

std::vector<RowRecovery> multi_sparse_interp(const FieldContext& F, std::size_t r,
                                             std::uint64_t n, std::size_t s,
                                             const CandidateSet& candidates, const Matrix& Y) {
  if (Y.rows() != r || Y.cols() != 2 * s) throw ShapeMismatch("evaluation block must be r x 2s");
  if (F.theta_order() < n) throw OrderTooSmall("theta order below the exponent bound");

  std::vector<Poly> minpolys;
  minpolys.reserve(r);
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Fp> seq(Y.row(i), Y.row(i) + 2 * s);
    minpolys.push_back(min_poly(F, seq, s));
  }
  auto roots = find_roots(F, candidates, minpolys);

  std::vector<RowRecovery> out(r);
  for (std::size_t i = 0; i < r; ++i) {
    const int dg = minpolys[i].degree();
    // Degree 0 covers the all-zero row; treat it as a failed recovery, the
    // caller's re-probe distinguishes "zero" from "missed".
    if (dg <= 0 || roots[i].size() != static_cast<std::size_t>(dg)) {
      out[i] = std::nullopt;
      continue;
    }
    std::vector<std::pair<std::uint64_t, Fp>> decoded;  // (exponent, root)
    decoded.reserve(roots[i].size());
    for (Fp root : roots[i]) {
      auto e = candidates.exponent_of(root);
      if (!e) {
        decoded.clear();
        break;
      }
      decoded.emplace_back(*e, root);
    }
    if (decoded.size() != roots[i].size()) {
      out[i] = std::nullopt;
      continue;
    }
    std::sort(decoded.begin(), decoded.end());
    const std::size_t t = decoded.size();
    std::vector<Fp> vand_roots(t);
    std::vector<Fp> rhs(t);
    for (std::size_t j = 0; j < t; ++j) vand_roots[j] = decoded[j].second;
    for (std::size_t j = 0; j < t; ++j) rhs[j] = Y.at(i, j);
    auto coeffs = tvand_solve(F, vand_roots, rhs);
    SparsePoly f;
    for (std::size_t j = 0; j < t; ++j) {
      if (coeffs[j].v != 0) f.terms.emplace_back(decoded[j].first, coeffs[j]);
    }
    out[i] = std::move(f);
  }
  return out;
}

}  // namespace mec
