#include <doctest.h>

#include <random>

#include "mec/errors.hpp"
#include "mec/field.hpp"

using namespace mec;

TEST_CASE("primality battery is exact on known cases") {
  CHECK(is_prime_u64(2));
  CHECK(is_prime_u64(3));
  CHECK(is_prime_u64(7));
  CHECK(is_prime_u64(31));
  CHECK(is_prime_u64(101));
  CHECK(is_prime_u64(2013265921));
  CHECK(is_prime_u64(9223372036854775783ULL));
  CHECK(is_prime_u64(18446744073709551557ULL));

  CHECK_FALSE(is_prime_u64(0));
  CHECK_FALSE(is_prime_u64(1));
  CHECK_FALSE(is_prime_u64(4));
  CHECK_FALSE(is_prime_u64(561));         // Carmichael
  CHECK_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to 2,3,5,7
  CHECK_FALSE(is_prime_u64(18446744073709551615ULL));
}

TEST_CASE("construction rejects non-primes and oversized moduli") {
  CHECK_THROWS_AS(FieldContext(0, 1), NotPrime);
  CHECK_THROWS_AS(FieldContext(1, 1), NotPrime);
  CHECK_THROWS_AS(FieldContext(6, 1), NotPrime);
  CHECK_THROWS_AS(FieldContext(1ULL << 63, 1), NotPrime);
}

TEST_CASE("theta is the smallest element meeting the order floor") {
  FieldContext F(7, 6);
  CHECK(F.theta().v == 3);  // ord(2)=3, ord(3)=6
  CHECK(F.theta_order() == 6);

  FieldContext G(7, 2);
  CHECK(G.theta().v == 2);
  CHECK(G.theta_order() == 3);

  FieldContext H(2, 1);
  CHECK(H.theta().v == 1);
  CHECK(H.theta_order() == 1);
}

TEST_CASE("order floor above p-1 is unattainable") {
  CHECK_THROWS_AS(FieldContext(7, 7), OrderUnavailable);
  CHECK_THROWS_AS(FieldContext(2, 2), OrderUnavailable);
}

TEST_CASE("theta order is genuine") {
  FieldContext F(2013265921, 4096);
  Fp t = F.theta();
  CHECK(F.pow(t, F.theta_order()).v == 1);
  // order is exact: no proper divisor of the order fixes theta
  for (std::uint64_t d : {2ULL, 3ULL, 5ULL}) {
    if (F.theta_order() % d == 0) CHECK(F.pow(t, F.theta_order() / d).v != 1);
  }
}

TEST_CASE("two-adic structure of the default prime") {
  FieldContext F(2013265921, 1);  // 2013265921 = 15 * 2^27 + 1
  CHECK(F.two_adicity() == 27);
  Fp w = F.two_adic_root();
  CHECK(F.pow(w, 1ULL << 27).v == 1);
  CHECK(F.pow(w, 1ULL << 26).v != 1);
}

TEST_CASE("small-field arithmetic agrees with integer arithmetic") {
  FieldContext F(7, 1);
  for (std::uint64_t a = 0; a < 7; ++a) {
    for (std::uint64_t b = 0; b < 7; ++b) {
      CHECK(F.add(Fp{a}, Fp{b}).v == (a + b) % 7);
      CHECK(F.sub(Fp{a}, Fp{b}).v == (a + 7 - b) % 7);
      CHECK(F.mul(Fp{a}, Fp{b}).v == a * b % 7);
    }
    CHECK(F.add(Fp{a}, F.neg(Fp{a})).v == 0);
  }
  CHECK(F.inv(Fp{5}).v == 3);
  CHECK_THROWS_AS(F.inv(Fp{0}), DivisionByZero);
}

TEST_CASE("inverse and power laws on a word-sized prime") {
  FieldContext F(9223372036854775783ULL, 1);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    Fp a = F.sample_nonzero(rng);
    CHECK(F.mul(a, F.inv(a)).v == 1);
    CHECK(F.pow(a, F.modulus() - 1).v == 1);  // Fermat
    Fp b = F.sample(rng);
    CHECK(F.mul(a, b) == F.mul(b, a));
    CHECK(F.sub(F.add(a, b), b) == a);
  }
}

TEST_CASE("sampling stays in range and nonzero sampling avoids zero") {
  FieldContext F(3, 1);
  std::mt19937_64 rng(11);
  bool saw[3] = {false, false, false};
  for (int i = 0; i < 300; ++i) {
    Fp a = F.sample(rng);
    REQUIRE(a.v < 3);
    saw[a.v] = true;
    CHECK(F.sample_nonzero(rng).v != 0);
  }
  CHECK(saw[0]);
  CHECK(saw[1]);
  CHECK(saw[2]);
}
