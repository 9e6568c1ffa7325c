#include "mec/field.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace mec {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

u64 powmod(u64 base, u64 e, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

// Pollard rho (Brent variant). n must be odd composite, not a prime power issue-free.
u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ n);
  while (true) {
    u64 c = rng() % (n - 1) + 1;
    u64 x = rng() % n, y = x, d = 1;
    auto step = [&](u64 v) { return static_cast<u64>(((u128)v * v + c) % n); };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      if (x == y) break;
      u64 diff = x > y ? x - y : y - x;
      d = std::gcd(diff, n);
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_into(u64 n, std::vector<u64>& primes) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    primes.push_back(n);
    return;
  }
  for (u64 d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % d == 0) {
      primes.push_back(d);
      factor_into(n / d, primes);
      return;
    }
  }
  u64 d = pollard_rho(n);
  factor_into(d, primes);
  factor_into(n / d, primes);
}

// Distinct prime factors of n.
std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> primes;
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

// Exact multiplicative order of g mod p, given the distinct prime factors of p-1.
u64 element_order(u64 g, u64 p, const std::vector<u64>& factors) {
  u64 order = p - 1;
  for (u64 q : factors) {
    while (order % q == 0 && powmod(g, order / q, p) == 1) order /= q;
  }
  return order;
}

}  // namespace

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) d /= 2, ++s;
  // This base set decides primality exactly for every n < 2^64.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

FieldContext::FieldContext(std::uint64_t p, std::uint64_t min_order) : p_(p) {
  if (p >= (1ULL << 63)) throw NotPrime("modulus does not fit the supported word range");
  if (!is_prime_u64(p)) throw NotPrime("modulus is not prime");
  if (min_order > p - 1) throw OrderUnavailable("no element has the requested order");

  // Rejection sampling bound: largest multiple of p below 2^64.
  reject_bound_ = (~0ULL / p_) * p_;

  u64 m = p - 1;
  two_adicity_ = 0;
  while (m % 2 == 0) m /= 2, ++two_adicity_;

  if (p == 2) {
    theta_ = Fp{1};
    theta_order_ = 1;
    two_adic_root_ = Fp{1};
    return;
  }

  auto factors = prime_factors(p - 1);
  // Smallest g with order(g) >= min_order. Some primitive root exists, so the
  // scan always terminates.
  for (u64 g = 2; g < p; ++g) {
    u64 ord = element_order(g, p, factors);
    if (ord >= min_order) {
      theta_ = Fp{g};
      theta_order_ = ord;
      break;
    }
  }

  // Element of order exactly 2^two_adicity: power of any primitive root.
  u64 g = 2;
  while (element_order(g, p, factors) != p - 1) ++g;
  two_adic_root_ = Fp{powmod(g, (p - 1) >> two_adicity_, p)};
}

Fp FieldContext::pow(Fp base, std::uint64_t e) const { return Fp{powmod(base.v, e, p_)}; }

Fp FieldContext::inv(Fp a) const {
  if (a.v == 0) throw DivisionByZero("inverse of zero");
  return pow(a, p_ - 2);
}

Fp FieldContext::sample(std::mt19937_64& rng) const {
  u64 x;
  do {
    x = rng();
  } while (x >= reject_bound_);
  return Fp{x % p_};
}

Fp FieldContext::sample_nonzero(std::mt19937_64& rng) const {
  Fp x;
  do {
    x = sample(rng);
  } while (x.v == 0);
  return x;
}

}  // namespace mec
