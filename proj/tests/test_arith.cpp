#include <doctest.h>

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "modcurve/arith.hpp"

using namespace modcurve;

namespace {

std::int64_t product_of(const Factorization& f) {
  std::int64_t out = 1;
  for (const PrimePower& pp : f) out *= checked_pow(pp.prime, pp.exponent);
  return out;
}

// Independent totient oracle: count coprime residues directly.
std::int64_t phi_by_counting(std::int64_t n) {
  std::int64_t count = 0;
  for (std::int64_t k = 1; k <= n; ++k)
    if (std::gcd(k, n) == 1) ++count;
  return count;
}

bool is_square_mod(std::int64_t a, std::int64_t p) {
  a = mod_reduce(a, p);
  for (std::int64_t x = 0; x < p; ++x)
    if (x * x % p == a) return true;
  return false;
}

}  // namespace

TEST_CASE("factorize basics") {
  CHECK(factorize(1).empty());
  CHECK(factorize(12) == Factorization{{2, 2}, {3, 1}});
  CHECK(factorize(39) == Factorization{{3, 1}, {13, 1}});
  CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("factorize round-trips through the product") {
  for (std::int64_t n = 1; n <= 3000; ++n) {
    Factorization f = factorize(n);
    CHECK(product_of(f) == n);
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(is_prime(f[i].prime));
      CHECK(f[i].exponent >= 1);
      if (i > 0) CHECK(f[i - 1].prime < f[i].prime);
    }
  }
  std::mt19937_64 rng(20240613);
  std::uniform_int_distribution<std::int64_t> dist(1, 1'000'000);
  for (int i = 0; i < 2000; ++i) {
    std::int64_t n = dist(rng);
    CHECK(product_of(factorize(n)) == n);
  }
}

TEST_CASE("euler_phi values and multiplicativity") {
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(12) == 4);
  CHECK(euler_phi(39) == 24);
  for (std::int64_t n = 1; n <= 300; ++n) CHECK(euler_phi(n) == phi_by_counting(n));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> dist(1, 10'000);
  int done = 0;
  while (done < 500) {
    std::int64_t a = dist(rng), b = dist(rng);
    if (std::gcd(a, b) != 1) continue;
    CHECK(euler_phi(a * b) == euler_phi(a) * euler_phi(b));
    ++done;
  }
}

TEST_CASE("omega and valuation") {
  CHECK(omega(1) == 0);
  CHECK(omega(39) == 2);
  CHECK(valuation(24, 2) == 3);
  CHECK(valuation(24, 5) == 0);
  CHECK_THROWS_AS(valuation(24, 6), std::invalid_argument);
}

TEST_CASE("legendre symbols at -1 and -3") {
  CHECK(legendre_minus_one(5) == 1);
  CHECK(legendre_minus_one(7) == -1);
  CHECK(legendre_minus_three(13) == 1);
  CHECK(legendre_minus_three(2) == -1);
  CHECK_THROWS_AS(legendre_minus_one(2), std::invalid_argument);
  CHECK_THROWS_AS(legendre_minus_one(9), std::invalid_argument);
  CHECK_THROWS_AS(legendre_minus_three(3), std::invalid_argument);
}

TEST_CASE("legendre symbols agree with brute-force square testing") {
  std::vector<std::int64_t> odd_primes;
  for (std::int64_t p = 3; p <= 100; ++p)
    if (is_prime(p)) odd_primes.push_back(p);
  for (std::int64_t p : odd_primes) {
    CHECK(legendre_minus_one(p) == (is_square_mod(-1, p) ? 1 : -1));
    if (p != 3) CHECK(legendre_minus_three(p) == (is_square_mod(-3, p) ? 1 : -1));
  }
  // Product rule: -1 is a square mod pq exactly when it is one mod p and mod q.
  for (std::int64_t p : odd_primes)
    for (std::int64_t q : odd_primes) {
      if (p == q) continue;
      bool square_both = is_square_mod(-1, p) && is_square_mod(-1, q);
      bool jacobi_plus = legendre_minus_one(p) == 1 && legendre_minus_one(q) == 1;
      CHECK(square_both == jacobi_plus);
    }
}

TEST_CASE("crt_lift") {
  {
    Residue parts[] = {{1, 3}, {1, 13}};
    CHECK(crt_lift(parts) == 1);
  }
  {
    Residue parts[] = {{2, 3}, {0, 13}};
    CHECK(crt_lift(parts) == 26);
  }
  {
    Residue parts[] = {{0, 4}, {1, 9}};
    CHECK(crt_lift(parts) == 28);
  }
  {
    Residue parts[] = {{1, 6}, {1, 4}};
    CHECK_THROWS_AS(crt_lift(parts), std::invalid_argument);
  }
  // Round trip: the lift reduces back to each residue.
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    std::int64_t m1 = 3 + 2 * static_cast<std::int64_t>(rng() % 20);
    std::int64_t m2 = 4 + 2 * static_cast<std::int64_t>(rng() % 10);
    if (std::gcd(m1, m2) != 1) continue;
    std::int64_t v1 = static_cast<std::int64_t>(rng() % m1);
    std::int64_t v2 = static_cast<std::int64_t>(rng() % m2);
    Residue parts[] = {{v1, m1}, {v2, m2}};
    std::int64_t x = crt_lift(parts);
    CHECK(x % m1 == v1);
    CHECK(x % m2 == v2);
    CHECK(x >= 0);
    CHECK(x < m1 * m2);
  }
}

TEST_CASE("divisors") {
  CHECK(divisors(1) == std::vector<std::int64_t>{1});
  CHECK(divisors(12) == std::vector<std::int64_t>{1, 2, 3, 4, 6, 12});
  CHECK(divisors(39) == std::vector<std::int64_t>{1, 3, 13, 39});
}

TEST_CASE("checked arithmetic rejects overflow") {
  constexpr std::int64_t big = INT64_MAX;
  CHECK_THROWS_AS(checked_add(big, 1), std::overflow_error);
  CHECK_THROWS_AS(checked_mul(big, 2), std::overflow_error);
  CHECK(checked_pow(2, 62) == (std::int64_t{1} << 62));
  CHECK_THROWS_AS(checked_pow(2, 63), std::overflow_error);
}

TEST_CASE("mod_inverse") {
  CHECK(mod_inverse(3, 7) == 5);
  CHECK(mod_inverse(1, 1) == 0);
  CHECK_THROWS_AS(mod_inverse(2, 4), std::invalid_argument);
}
