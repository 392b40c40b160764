#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace modcurve {

/// One prime-power factor p^e of a factored integer.
struct PrimePower {
  std::int64_t prime = 0;
  int exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization, sorted ascending by prime. Empty for n = 1.
using Factorization = std::vector<PrimePower>;

/// Trial-division factorization of n >= 1. Rejects n < 1.
Factorization factorize(std::int64_t n);

/// Euler totient: #{k in [1, n] : gcd(k, n) = 1}.
std::int64_t euler_phi(std::int64_t n);

/// Number of distinct primes dividing n.
int omega(std::int64_t n);

/// Exponent of the prime p in n. Rejects non-prime p.
int valuation(std::int64_t n, std::int64_t p);

bool is_prime(std::int64_t n);

/// Legendre symbol (-1/p) for an odd prime p: +1 iff p = 1 (mod 4).
int legendre_minus_one(std::int64_t p);

/// Legendre symbol (-3/p) for a prime p != 3: +1 iff p = 1 (mod 3).
/// In particular (-3/2) = -1.
int legendre_minus_three(std::int64_t p);

struct Residue {
  std::int64_t value = 0;
  std::int64_t modulus = 1;
};

/// Lift of residues with pairwise coprime moduli to the unique value in
/// [0, prod moduli). Rejects non-coprime moduli.
std::int64_t crt_lift(std::span<const Residue> parts);

/// Divisors of n in ascending order.
std::vector<std::int64_t> divisors(std::int64_t n);

// Arithmetic that throws std::overflow_error instead of wrapping.
std::int64_t checked_add(std::int64_t x, std::int64_t y);
std::int64_t checked_sub(std::int64_t x, std::int64_t y);
std::int64_t checked_mul(std::int64_t x, std::int64_t y);
std::int64_t checked_pow(std::int64_t base, int exp);

/// Canonical representative of x mod n in [0, n).
std::int64_t mod_reduce(std::int64_t x, std::int64_t n);

/// Inverse of a modulo n; requires gcd(a, n) = 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t n);

}  // namespace modcurve
