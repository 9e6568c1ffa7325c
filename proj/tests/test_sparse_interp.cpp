#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "mec/errors.hpp"
#include "mec/field.hpp"
#include "mec/sparse_interp.hpp"

using namespace mec;

namespace {

// Y_{i,j} = f_i(theta^j) computed term by term.
Matrix eval_rows(const FieldContext& F, const std::vector<SparsePoly>& fs, std::size_t width) {
  Matrix Y(fs.size(), width);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      Fp acc{0};
      for (const auto& [e, c] : fs[i].terms)
        acc = F.add(acc, F.mul(c, F.pow(F.pow(F.theta(), j), e)));
      Y.set(i, j, acc);
    }
  }
  return Y;
}

}  // namespace

TEST_CASE("candidate set decodes points back to exponents") {
  FieldContext F(7, 6);  // theta = 3, order 6
  auto cand = CandidateSet::full_range(F, 5);
  REQUIRE(cand.size() == 5);
  CHECK(cand.exponents() == std::vector<std::uint64_t>{0, 1, 2, 3, 4});
  CHECK(cand.points()[0].v == 1);
  CHECK(cand.points()[1].v == 3);
  CHECK(cand.points()[2].v == 2);  // 3^2 = 9 = 2 mod 7
  CHECK(cand.points()[3].v == 6);
  CHECK(cand.points()[4].v == 4);
  CHECK(cand.exponent_of(Fp{6}) == 3);
  CHECK(!cand.exponent_of(Fp{5}).has_value());  // 5 = 3^5 is outside the range

  CandidateSet sub(F, {0, 4});
  CHECK(sub.size() == 2);
  CHECK(sub.exponent_of(Fp{4}) == 4);
  CHECK(!sub.exponent_of(Fp{3}).has_value());
}

TEST_CASE("candidate set rejects colliding power tables") {
  FieldContext F(7, 6);  // order(theta) = 6, so exponents 0 and 6 collide
  CHECK_THROWS_AS(CandidateSet::full_range(F, 7), OrderTooSmall);
  CHECK_THROWS_AS(CandidateSet(F, {1, 7}), OrderTooSmall);
}

TEST_CASE("find_roots matches a brute-force scan") {
  FieldContext F(2013265921, 64);
  std::mt19937_64 rng(21);
  auto cand = CandidateSet::full_range(F, 64);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t r = 1 + rng() % 8;
    std::vector<Poly> polys;
    for (std::size_t i = 0; i < r; ++i) {
      // product of (z - theta^e) factors, some repeated, some outside candidates
      Poly g({Fp{1}});
      std::size_t nroots = rng() % 5;
      for (std::size_t t = 0; t < nroots; ++t) {
        std::uint64_t e = rng() % 80;  // may exceed the candidate range
        Fp root = F.pow(F.theta(), e);
        g = poly_mul(F, g, Poly({F.neg(root), Fp{1}}));
        if (rng() % 3 == 0) g = poly_mul(F, g, Poly({F.neg(root), Fp{1}}));
      }
      polys.push_back(std::move(g));
    }
    auto got = find_roots(F, cand, polys);
    REQUIRE(got.size() == r);
    for (std::size_t i = 0; i < r; ++i) {
      std::set<std::uint64_t> want;
      for (Fp a : cand.points())
        if (poly_eval(F, polys[i], a).v == 0) want.insert(a.v);
      std::set<std::uint64_t> have;
      for (Fp a : got[i]) have.insert(a.v);
      CHECK(have == want);
    }
  }
}

TEST_CASE("find_roots handles constant and equal minpolys") {
  FieldContext F(7, 6);
  auto cand = CandidateSet::full_range(F, 6);
  Poly z_minus_1({Fp{6}, Fp{1}});
  auto got = find_roots(F, cand, {Poly({Fp{1}}), z_minus_1, z_minus_1});
  REQUIRE(got.size() == 3);
  CHECK(got[0].empty());
  REQUIRE(got[1].size() == 1);
  CHECK(got[1][0].v == 1);
  CHECK(got[2] == got[1]);
}

TEST_CASE("single-row recovery of a hand-checked polynomial") {
  FieldContext F(7, 3);  // theta = 2, order 3
  REQUIRE(F.theta().v == 2);
  auto cand = CandidateSet::full_range(F, 3);
  // f = 5x^2: f(2^0) = 5, f(2^1) = 20 = 6 mod 7
  Matrix Y(1, 2);
  Y.set(0, 0, Fp{5});
  Y.set(0, 1, Fp{6});
  auto got = multi_sparse_interp(F, 1, 3, 1, cand, Y);
  REQUIRE(got.size() == 1);
  REQUIRE(got[0].has_value());
  REQUIRE(got[0]->terms.size() == 1);
  CHECK(got[0]->terms[0].first == 2);
  CHECK(got[0]->terms[0].second.v == 5);
}

TEST_CASE("all-zero evaluation rows are flagged, not recovered") {
  FieldContext F(2013265921, 16);
  auto cand = CandidateSet::full_range(F, 16);
  Matrix Y(2, 8);  // row 0 all zero; row 1 constant 3
  for (std::size_t j = 0; j < 8; ++j) Y.set(1, j, Fp{3});
  auto got = multi_sparse_interp(F, 2, 16, 4, cand, Y);
  REQUIRE(got.size() == 2);
  CHECK(!got[0].has_value());
  REQUIRE(got[1].has_value());
  REQUIRE(got[1]->terms.size() == 1);
  CHECK(got[1]->terms[0].first == 0);
  CHECK(got[1]->terms[0].second.v == 3);
}

TEST_CASE("failure marker when a minpoly root decodes to no candidate") {
  FieldContext F(7, 6);  // theta = 3
  auto cand = CandidateSet::full_range(F, 3);  // points {1, 3, 2}
  // f = x^3: f(3^j) = 6^j, so the minpoly is z - 6 and 6 = 3^3 is off-table
  Matrix Y(1, 2);
  Y.set(0, 0, Fp{1});
  Y.set(0, 1, Fp{6});
  auto got = multi_sparse_interp(F, 1, 3, 1, cand, Y);
  REQUIRE(got.size() == 1);
  CHECK(!got[0].has_value());
}

TEST_CASE("failure marker on roots outside the candidate subset") {
  FieldContext F(2013265921, 32);
  CandidateSet cand(F, {0, 1, 2, 3});  // narrow subset of the exponent range
  std::vector<SparsePoly> fs(1);
  fs[0].terms = {{7, Fp{9}}};  // support outside {0..3}
  Matrix Y = eval_rows(F, fs, 4);
  auto got = multi_sparse_interp(F, 1, 32, 2, cand, Y);
  REQUIRE(got.size() == 1);
  CHECK(!got[0].has_value());
}

TEST_CASE("batched recovery round trips random sparse rows") {
  FieldContext F(2013265921, 64);
  std::mt19937_64 rng(22);
  auto cand = CandidateSet::full_range(F, 64);
  const std::size_t s = 8;
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t r = 1 + rng() % 6;
    std::vector<SparsePoly> fs(r);
    for (auto& f : fs) {
      std::size_t t = rng() % (s + 1);
      std::set<std::uint64_t> sup;
      while (sup.size() < t) sup.insert(rng() % 64);
      for (auto e : sup) f.terms.push_back({e, F.sample_nonzero(rng)});
    }
    Matrix Y = eval_rows(F, fs, 2 * s);
    auto got = multi_sparse_interp(F, r, 64, s, cand, Y);
    REQUIRE(got.size() == r);
    for (std::size_t i = 0; i < r; ++i) {
      if (fs[i].terms.empty()) {
        CHECK(!got[i].has_value());  // zero row is indistinguishable from failure
      } else {
        REQUIRE(got[i].has_value());
        CHECK(*got[i] == fs[i]);
      }
    }
  }
}

TEST_CASE("recovered rows always replay their evaluations") {
  // Rows denser than s may alias to a sparser polynomial; the contract is only
  // that any returned polynomial is consistent with all 2s probe values.
  FieldContext F(2013265921, 128);
  std::mt19937_64 rng(23);
  auto cand = CandidateSet::full_range(F, 128);
  const std::size_t s = 4;
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<SparsePoly> fs(1);
    std::size_t t = s + 1 + rng() % s;  // deliberately over budget
    std::set<std::uint64_t> sup;
    while (sup.size() < t) sup.insert(rng() % 128);
    for (auto e : sup) fs[0].terms.push_back({e, F.sample_nonzero(rng)});
    Matrix Y = eval_rows(F, fs, 2 * s);
    auto got = multi_sparse_interp(F, 1, 128, s, cand, Y);
    REQUIRE(got.size() == 1);
    if (got[0].has_value()) {
      Matrix Yr = eval_rows(F, {*got[0]}, 2 * s);
      for (std::size_t j = 0; j < 2 * s; ++j) CHECK(Yr.at(0, j) == Y.at(0, j));
      CHECK(got[0]->terms.size() <= s);
      CHECK(std::is_sorted(got[0]->terms.begin(), got[0]->terms.end(),
                           [](const auto& a, const auto& b) { return a.first < b.first; }));
    }
  }
}
