#pragma once

#include <cstdint>
#include <random>

#include "mec/errors.hpp"

namespace mec {

// Canonical residue in [0, p). Plain value type; arithmetic lives on FieldContext.
struct Fp {
  std::uint64_t v = 0;
  friend bool operator==(Fp a, Fp b) { return a.v == b.v; }
  friend bool operator!=(Fp a, Fp b) { return a.v != b.v; }
  friend bool operator<(Fp a, Fp b) { return a.v < b.v; }
};

// Prime field GF(p) for word-sized p, with a distinguished element theta of
// known multiplicative order. Construction verifies primality, factors p-1,
// and picks theta deterministically (smallest element of order >= min_order),
// so the same p always yields the same theta.
class FieldContext {
 public:
  // Throws NotPrime if p fails a deterministic Miller-Rabin battery,
  // OrderUnavailable if no element of order >= min_order exists (min_order > p-1).
  FieldContext(std::uint64_t p, std::uint64_t min_order);

  std::uint64_t modulus() const { return p_; }
  Fp theta() const { return theta_; }
  std::uint64_t theta_order() const { return theta_order_; }

  // Largest a with 2^a | p-1, and an element of that exact order (for NTT).
  unsigned two_adicity() const { return two_adicity_; }
  Fp two_adic_root() const { return two_adic_root_; }

  Fp zero() const { return Fp{0}; }
  Fp one() const { return Fp{p_ > 1 ? 1u : 0u}; }
  Fp from_uint(std::uint64_t x) const { return Fp{x % p_}; }
  bool is_zero(Fp a) const { return a.v == 0; }

  Fp add(Fp a, Fp b) const {
    std::uint64_t s = a.v + b.v;  // p < 2^63, no overflow
    return Fp{s >= p_ ? s - p_ : s};
  }
  Fp sub(Fp a, Fp b) const { return Fp{a.v >= b.v ? a.v - b.v : a.v + p_ - b.v}; }
  Fp neg(Fp a) const { return Fp{a.v == 0 ? 0 : p_ - a.v}; }
  Fp mul(Fp a, Fp b) const {
    return Fp{static_cast<std::uint64_t>((unsigned __int128)a.v * b.v % p_)};
  }
  Fp pow(Fp base, std::uint64_t e) const;
  // Throws DivisionByZero on a = 0.
  Fp inv(Fp a) const;

  // Uniform over [0, p) by rejection; consumes the given engine.
  Fp sample(std::mt19937_64& rng) const;
  Fp sample_nonzero(std::mt19937_64& rng) const;

 private:
  std::uint64_t p_;
  Fp theta_{};
  std::uint64_t theta_order_ = 1;
  unsigned two_adicity_ = 0;
  Fp two_adic_root_{};
  std::uint64_t reject_bound_ = 0;
};

// Deterministic primality test, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

}  // namespace mec
