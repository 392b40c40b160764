#include "modcurve/arith.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace modcurve {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

// Extended gcd: returns g = gcd(a, b) and x, y with a*x + b*y = g.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    std::int64_t q = a / b;
    std::int64_t t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  x = x0;
  y = y0;
  return a;
}

}  // namespace

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(x, y, &out)) throw std::overflow_error("integer overflow in addition");
  return out;
}

std::int64_t checked_sub(std::int64_t x, std::int64_t y) {
  std::int64_t out = 0;
  if (__builtin_sub_overflow(x, y, &out)) throw std::overflow_error("integer overflow in subtraction");
  return out;
}

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(x, y, &out)) throw std::overflow_error("integer overflow in multiplication");
  return out;
}

std::int64_t checked_pow(std::int64_t base, int exp) {
  if (exp < 0) fail("checked_pow: negative exponent");
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

Factorization factorize(std::int64_t n) {
  if (n < 1) fail("factorize: argument must be >= 1");
  Factorization out;
  std::int64_t rest = n;
  for (std::int64_t p = 2; p <= rest / p; ++p) {
    if (rest % p != 0) continue;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (rest > 1) out.push_back({rest, 1});
  return out;
}

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t phi = n;
  for (const PrimePower& f : factorize(n)) phi = phi / f.prime * (f.prime - 1);
  return phi;
}

int omega(std::int64_t n) { return static_cast<int>(factorize(n).size()); }

int valuation(std::int64_t n, std::int64_t p) {
  if (n < 1) fail("valuation: argument must be >= 1");
  if (!is_prime(p)) fail("valuation: modulus base must be prime");
  int e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p <= n / p; ++p)
    if (n % p == 0) return false;
  return true;
}

int legendre_minus_one(std::int64_t p) {
  if (!is_prime(p) || p == 2) fail("legendre_minus_one: argument must be an odd prime");
  return p % 4 == 1 ? 1 : -1;
}

int legendre_minus_three(std::int64_t p) {
  if (!is_prime(p) || p == 3) fail("legendre_minus_three: argument must be a prime other than 3");
  return p % 3 == 1 ? 1 : -1;
}

std::int64_t mod_reduce(std::int64_t x, std::int64_t n) {
  if (n < 1) fail("mod_reduce: modulus must be >= 1");
  std::int64_t r = x % n;
  return r < 0 ? r + n : r;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t n) {
  if (n < 1) fail("mod_inverse: modulus must be >= 1");
  if (n == 1) return 0;
  std::int64_t x = 0, y = 0;
  std::int64_t g = ext_gcd(mod_reduce(a, n), n, x, y);
  if (g != 1) fail("mod_inverse: argument is not a unit");
  return mod_reduce(x, n);
}

std::int64_t crt_lift(std::span<const Residue> parts) {
  std::int64_t value = 0;
  std::int64_t modulus = 1;
  for (const Residue& part : parts) {
    if (part.modulus < 1) fail("crt_lift: moduli must be >= 1");
    if (std::gcd(modulus, part.modulus) != 1) fail("crt_lift: moduli are not pairwise coprime");
    // value + modulus * t = part.value (mod part.modulus)
    std::int64_t target = mod_reduce(part.value, part.modulus);
    std::int64_t t = mod_reduce((target - value % part.modulus) % part.modulus *
                                    mod_inverse(modulus % part.modulus, part.modulus) % part.modulus,
                                part.modulus);
    value = checked_add(value, checked_mul(modulus, t));
    modulus = checked_mul(modulus, part.modulus);
  }
  return value;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  Factorization f = factorize(n);
  std::vector<std::int64_t> out{1};
  for (const PrimePower& pp : f) {
    std::size_t base = out.size();
    std::int64_t q = 1;
    for (int e = 1; e <= pp.exponent; ++e) {
      q = checked_mul(q, pp.prime);
      for (std::size_t i = 0; i < base; ++i) out.push_back(checked_mul(out[i], q));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace modcurve
