#include "modcurve/formulas.hpp"

#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "modcurve/arith.hpp"

namespace modcurve {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

// Exact rational on checked 64-bit integers; every formula result is asserted
// integral before it leaves this file.
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat() = default;
  Rat(std::int64_t n) : num(n) {}  // NOLINT: implicit by design
  Rat(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("Rat: zero denominator");
    if (den < 0) {
      num = checked_mul(num, -1);
      den = checked_mul(den, -1);
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  Rat operator+(const Rat& r) const {
    return Rat(checked_add(checked_mul(num, r.den), checked_mul(r.num, den)),
               checked_mul(den, r.den));
  }
  Rat operator-(const Rat& r) const {
    return Rat(checked_sub(checked_mul(num, r.den), checked_mul(r.num, den)),
               checked_mul(den, r.den));
  }
  Rat operator*(const Rat& r) const {
    return Rat(checked_mul(num, r.num), checked_mul(den, r.den));
  }
  Rat operator/(const Rat& r) const {
    if (r.num == 0) throw std::invalid_argument("Rat: division by zero");
    return Rat(checked_mul(num, r.den), checked_mul(den, r.num));
  }

  std::int64_t as_integer(const char* what) const {
    if (den != 1)
      throw std::logic_error(std::string("non-integral value for ") + what + ": " +
                             std::to_string(num) + "/" + std::to_string(den));
    return num;
  }
};

InvariantSet assemble(std::int64_t index, std::int64_t nu2, std::int64_t nu3, std::int64_t cusps) {
  InvariantSet inv;
  inv.psl2_index = index;
  inv.nu2 = nu2;
  inv.nu3 = nu3;
  inv.cusps = cusps;
  inv.genus = genus_from_invariants(index, nu2, nu3, cusps);
  inv.method = Method::Formula;
  return inv;
}

InvariantSet level_one() { return assemble(1, 1, 1, 1); }

Rat prod_one_plus_inv(const Factorization& f) {
  Rat out = 1;
  for (const PrimePower& pp : f) out = out * Rat(pp.prime + 1, pp.prime);
  return out;
}

Rat prod_one_minus_inv_sq(const Factorization& f) {
  Rat out = 1;
  for (const PrimePower& pp : f)
    out = out * Rat(checked_mul(pp.prime, pp.prime) - 1, checked_mul(pp.prime, pp.prime));
  return out;
}

bool all_primes_one_mod_three(const Factorization& f) {
  for (const PrimePower& pp : f)
    if (pp.prime % 3 != 1) return false;
  return true;
}

bool all_primes_two_mod_three(const Factorization& f) {
  for (const PrimePower& pp : f)
    if (pp.prime % 3 != 2) return false;
  return true;
}

// nu2 of the split Cartan: 0 for even N, else prod (1 + (-1/p)).
std::int64_t sp_nu2(std::int64_t n, const Factorization& f) {
  if (n % 2 == 0) return 0;
  std::int64_t out = 1;
  for (const PrimePower& pp : f) out *= 1 + legendre_minus_one(pp.prime);
  return out;
}

// nu3 of the split Cartan: 0 when 2 | N or 3 | N, else prod (1 + (-3/p)).
std::int64_t sp_nu3(std::int64_t n, const Factorization& f) {
  if (n % 2 == 0 || n % 3 == 0) return 0;
  std::int64_t out = 1;
  for (const PrimePower& pp : f) out *= 1 + legendre_minus_three(pp.prime);
  return out;
}

// nu2 of the nonsplit Cartan: 0 for even N (-1 is a square mod 2), else
// prod (1 - (-1/p)).
std::int64_t ns_nu2(std::int64_t n, const Factorization& f) {
  if (n % 2 == 0) return 0;
  std::int64_t out = 1;
  for (const PrimePower& pp : f) out *= 1 - legendre_minus_one(pp.prime);
  return out;
}

std::int64_t two_pow(int e) { return checked_pow(2, e); }

std::int64_t exact_half(std::int64_t x, const char* what) {
  return Rat(x, 2).as_integer(what);
}

}  // namespace

std::string_view method_tag(Method method) {
  return method == Method::Formula ? "formula" : "bruteforce";
}

bool InvariantSet::same_values(const InvariantSet& other) const {
  return psl2_index == other.psl2_index && nu2 == other.nu2 && nu3 == other.nu3 &&
         cusps == other.cusps && genus == other.genus;
}

std::int64_t genus_from_invariants(std::int64_t psl2_index, std::int64_t nu2, std::int64_t nu3,
                                   std::int64_t cusps) {
  if (psl2_index < 1 || nu2 < 0 || nu3 < 0 || cusps < 0)
    fail("genus_from_invariants: invariants out of range");
  std::int64_t t = checked_sub(checked_add(12, psl2_index),
                               checked_add(checked_mul(3, nu2),
                                           checked_add(checked_mul(4, nu3), checked_mul(6, cusps))));
  if (t < 0 || t % 12 != 0)
    fail("genus_from_invariants: inconsistent invariants (12 + i - 3*nu2 - 4*nu3 - 6*cusps = " +
         std::to_string(t) + ")");
  return t / 12;
}

InvariantSet invariants_x0(std::int64_t n) {
  if (n < 1) fail("invariants_x0: level must be >= 1");
  if (n == 1) return level_one();
  Factorization f = factorize(n);
  std::int64_t index = (Rat(n) * prod_one_plus_inv(f)).as_integer("x0 index");
  std::int64_t nu2 = 0;
  if (n % 4 != 0) {
    nu2 = 1;
    for (const PrimePower& pp : f) nu2 *= pp.prime == 2 ? 1 : 1 + legendre_minus_one(pp.prime);
  }
  std::int64_t nu3 = 0;
  if (n % 9 != 0) {
    nu3 = 1;
    for (const PrimePower& pp : f) nu3 *= pp.prime == 3 ? 1 : 1 + legendre_minus_three(pp.prime);
  }
  std::int64_t cusps = 0;
  for (std::int64_t d : divisors(n)) cusps += euler_phi(std::gcd(d, n / d));
  return assemble(index, nu2, nu3, cusps);
}

InvariantSet invariants_x1(std::int64_t n) {
  if (n < 1) fail("invariants_x1: level must be >= 1");
  if (n == 1) return level_one();
  if (n == 2) return assemble(3, 1, 0, 2);
  Factorization f = factorize(n);
  std::int64_t index =
      (Rat(checked_mul(n, n), 2) * prod_one_minus_inv_sq(f)).as_integer("x1 index");
  std::int64_t nu3 = n == 3 ? 1 : 0;
  std::int64_t cusps;
  if (n == 4) {
    cusps = 3;
  } else {
    std::int64_t sum = 0;
    for (std::int64_t d : divisors(n)) sum = checked_add(sum, checked_mul(euler_phi(d), euler_phi(n / d)));
    cusps = exact_half(sum, "x1 cusps");
  }
  return assemble(index, 0, nu3, cusps);
}

InvariantSet invariants_xfull(std::int64_t n) {
  if (n < 1) fail("invariants_xfull: level must be >= 1");
  if (n == 1) return level_one();
  if (n == 2) return assemble(6, 0, 0, 3);
  Factorization f = factorize(n);
  std::int64_t index =
      (Rat(checked_mul(checked_mul(n, n), n), 2) * prod_one_minus_inv_sq(f)).as_integer("x(n) index");
  return assemble(index, 0, 0, index / n);
}

InvariantSet invariants_arith1(std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 1) fail("invariants_arith1: both parameters must be >= 1");
  if (m == 1) return invariants_x1(n);
  if (n == 1) return invariants_xfull(m);
  std::int64_t mn = checked_mul(m, n);
  Factorization f = factorize(mn);
  std::int64_t index = (Rat(checked_mul(checked_mul(m, m), m), 2) * Rat(checked_mul(n, n)) *
                        prod_one_minus_inv_sq(f))
                           .as_integer("arith1 index");
  std::int64_t sum = 0;
  for (std::int64_t d : divisors(mn))
    sum = checked_add(
        sum, checked_mul(checked_mul(euler_phi(mn / d), euler_phi(d)), std::gcd(m, mn / d)));
  std::int64_t cusps = exact_half(sum, "arith1 cusps");
  return assemble(index, 0, 0, cusps);
}

InvariantSet invariants_sp(std::int64_t n) {
  if (n < 1) fail("invariants_sp: level must be >= 1");
  if (n == 1) return level_one();
  Factorization f = factorize(n);
  std::int64_t index = (Rat(checked_mul(n, n)) * prod_one_plus_inv(f)).as_integer("sp index");
  std::int64_t cusps = (Rat(n) * prod_one_plus_inv(f)).as_integer("sp cusps");
  return assemble(index, sp_nu2(n, f), sp_nu3(n, f), cusps);
}

InvariantSet invariants_sp_plus(std::int64_t n) {
  if (n < 1) fail("invariants_sp_plus: level must be >= 1");
  if (n == 1) return level_one();
  Factorization f = factorize(n);
  std::int64_t index =
      (Rat(checked_mul(n, n), 2) * prod_one_plus_inv(f)).as_integer("sp+ index");
  // Half the Cartan count plus the contribution of the swapped cosets.
  Rat swapped = Rat(n, 2);
  for (const PrimePower& pp : f) {
    if (pp.prime % 4 == 1) swapped = swapped * Rat(pp.prime - 1, pp.prime);
    if (pp.prime % 4 == 3) swapped = swapped * Rat(pp.prime + 1, pp.prime);
  }
  std::int64_t nu2 =
      (Rat(sp_nu2(n, f), 2) + swapped).as_integer("sp+ nu2");
  std::int64_t nu3 = exact_half(sp_nu3(n, f), "sp+ nu3");
  std::int64_t cusps =
      n == 2 ? 2 : (Rat(n, 2) * prod_one_plus_inv(f)).as_integer("sp+ cusps");
  return assemble(index, nu2, nu3, cusps);
}

InvariantSet invariants_sp_star(std::int64_t n) {
  if (n < 1) fail("invariants_sp_star: level must be >= 1");
  if (n == 1) return level_one();
  Factorization f = factorize(n);
  int w = static_cast<int>(f.size());
  std::int64_t index = (Rat(checked_mul(n, n), two_pow(w)) * prod_one_plus_inv(f))
                           .as_integer("sp* index");
  Rat cusps_rat = Rat(n) * prod_one_plus_inv(f);
  // The factor at exactly-divides-2 collapses to the two-cusp special case.
  if (n % 4 == 2)
    cusps_rat = cusps_rat * Rat(4, checked_mul(3, two_pow(w)));
  else
    cusps_rat = cusps_rat / two_pow(w);
  std::int64_t cusps = cusps_rat.as_integer("sp* cusps");
  std::int64_t nu3 = all_primes_one_mod_three(f) ? 1 : 0;
  // Leading power of two taken as 1 for odd N.
  Rat nu2_rat = n % 2 == 0 ? Rat(two_pow(valuation(n, 2) - 1)) : Rat(1);
  for (const PrimePower& pp : f) {
    std::int64_t scale = checked_pow(pp.prime, pp.exponent - 1);
    if (pp.prime % 4 == 1)
      nu2_rat = nu2_rat * (Rat(1) + Rat(checked_mul(scale, pp.prime - 1), 2));
    if (pp.prime % 4 == 3) nu2_rat = nu2_rat * Rat(checked_mul(scale, pp.prime + 1), 2);
  }
  return assemble(index, nu2_rat.as_integer("sp* nu2"), nu3, cusps);
}

InvariantSet invariants_ns(std::int64_t n) {
  if (n < 1) fail("invariants_ns: level must be >= 1");
  if (n == 1) return level_one();
  Factorization f = factorize(n);
  std::int64_t index = checked_mul(n, euler_phi(n));
  std::int64_t nu3 = all_primes_two_mod_three(f) ? two_pow(static_cast<int>(f.size())) : 0;
  return assemble(index, ns_nu2(n, f), nu3, euler_phi(n));
}

InvariantSet invariants_ns_plus(std::int64_t n) {
  if (n < 1) fail("invariants_ns_plus: level must be >= 1");
  if (n == 1) return level_one();
  // The normalizer at level 2 is all of GL2(F_2), so the curve is X(1); the
  // generic nu2 expression degenerates there (+-1 collapse mod 2).
  if (n == 2) return level_one();
  Factorization f = factorize(n);
  std::int64_t index = exact_half(checked_mul(n, euler_phi(n)), "ns+ index");
  std::int64_t norm_minus_one_classes =
      (Rat(n, 2) * prod_one_plus_inv(f)).as_integer("ns+ norm -1 class count");
  std::int64_t nu2 = checked_add(exact_half(ns_nu2(n, f), "ns+ nu2 norm +1 part"),
                                 checked_sub(norm_minus_one_classes, ns_sharp_S(n)));
  std::int64_t nu3 =
      all_primes_two_mod_three(f) ? two_pow(static_cast<int>(f.size()) - 1) : 0;
  std::int64_t cusps = exact_half(euler_phi(n), "ns+ cusps");
  return assemble(index, nu2, nu3, cusps);
}

InvariantSet invariants_ns_star(std::int64_t n) {
  if (n < 1) fail("invariants_ns_star: level must be >= 1");
  if (n == 1) return level_one();
  Factorization f = factorize(n);
  int w = static_cast<int>(f.size());
  std::int64_t index =
      (Rat(checked_mul(n, euler_phi(n)), two_pow(w))).as_integer("ns* index");
  std::int64_t cusps = n % 4 == 2 ? (Rat(euler_phi(n), two_pow(w - 1))).as_integer("ns* cusps")
                                  : (Rat(euler_phi(n), two_pow(w))).as_integer("ns* cusps");
  std::int64_t nu3 = all_primes_two_mod_three(f) ? 1 : 0;
  Rat nu2_rat = n % 2 == 0 ? Rat(two_pow(valuation(n, 2) - 1)) : Rat(1);
  for (const PrimePower& pp : f) {
    std::int64_t scale = checked_pow(pp.prime, pp.exponent - 1);
    if (pp.prime % 4 == 1) nu2_rat = nu2_rat * Rat(checked_mul(scale, pp.prime - 1), 2);
    if (pp.prime % 4 == 3)
      nu2_rat = nu2_rat * (Rat(1) + Rat(checked_mul(scale, pp.prime + 1), 2));
  }
  return assemble(index, nu2_rat.as_integer("ns* nu2"), nu3, cusps);
}

InvariantSet invariants_s4(std::int64_t p) {
  if (p < 5 || !is_prime(p) || p % 2 == 0) fail("invariants_s4: level must be an odd prime >= 5");
  std::int64_t p2m1 = checked_mul(p - 1, p + 1);
  bool det_surjective = p % 8 == 3 || p % 8 == 5;
  if (det_surjective) {
    // S4 sits in PGL2 but not PSL2; the SL2 part covers A4, so the
    // symmetrized subgroup has projective order 12.
    std::int64_t index = (Rat(checked_mul(p, p2m1), 24)).as_integer("s4 index");
    std::int64_t nu2 = (Rat(p - legendre_minus_one(p), 4)).as_integer("s4 nu2");
    std::int64_t nu3 = (Rat(p - legendre_minus_three(p), 3)).as_integer("s4 nu3");
    std::int64_t cusps = (Rat(p2m1, 24)).as_integer("s4 cusps");
    return assemble(index, nu2, nu3, cusps);
  }
  // p = +-1 (mod 8): S4 lies inside PSL2, the symmetrized subgroup is the
  // binary octahedral group (order 48), and every count halves accordingly:
  // 18 order-4 and 8 order-3 elements against centralizers of size p -+ 1.
  std::int64_t index = (Rat(checked_mul(p, p2m1), 48)).as_integer("s4 index");
  std::int64_t nu2 =
      (Rat(checked_mul(3, p - legendre_minus_one(p)), 8)).as_integer("s4 nu2");
  std::int64_t nu3 = (Rat(p - legendre_minus_three(p), 6)).as_integer("s4 nu3");
  std::int64_t cusps = (Rat(p2m1, 48)).as_integer("s4 cusps");
  return assemble(index, nu2, nu3, cusps);
}

std::int64_t ns_sharp_S(std::int64_t n) {
  if (n < 2) fail("ns_sharp_S: level must be >= 2");
  Factorization f = factorize(n);
  int w = static_cast<int>(f.size());

  // Route 1: inclusion-exclusion over subsets of the primes dividing n.
  // Unit classes up to sign; mod 2 the sign quotient is trivial.
  Rat unit_classes = Rat(checked_mul(n, n)) * prod_one_minus_inv_sq(f);
  if (n > 2) unit_classes = unit_classes / 2;
  Rat total = 0;
  for (int mask = 1; mask < (1 << w); ++mask) {
    bool blocked = false;
    bool has_two = false;
    Rat image_size = euler_phi(n);
    int size = 0;
    for (int bit = 0; bit < w; ++bit) {
      if (!(mask & (1 << bit))) continue;
      ++size;
      std::int64_t p = f[bit].prime;
      if (p % 4 == 3) blocked = true;
      if (p == 2) has_two = true;
      image_size = image_size * Rat(p + 1, 2);
    }
    if (blocked) continue;
    if (has_two) image_size = image_size * 2;
    Rat fiber = unit_classes / image_size;
    total = size % 2 == 1 ? total + fiber : total - fiber;
  }
  std::int64_t by_counting = total.as_integer("ns sharp-S inclusion-exclusion");

  // Route 2: direct enumeration of norm -1 classes with b not coprime to n.
  NonsplitAlgebra alg = find_nonsplit_algebra(n);
  std::int64_t minus_one = n - 1;
  std::set<std::pair<std::int64_t, std::int64_t>> classes;
  for (std::int64_t a = 0; a < n; ++a)
    for (std::int64_t b = 0; b < n; ++b) {
      if (std::gcd(b, n) == 1) continue;
      std::int64_t norm = algebra_norm(alg, a, b);
      if (norm != minus_one || std::gcd(norm, n) != 1) continue;
      std::pair<std::int64_t, std::int64_t> x{a, b};
      std::pair<std::int64_t, std::int64_t> neg{mod_reduce(-a, n), mod_reduce(-b, n)};
      classes.insert(std::min(x, neg));
    }
  auto by_enumeration = static_cast<std::int64_t>(classes.size());

  if (by_counting != by_enumeration)
    throw std::logic_error("ns_sharp_S: inclusion-exclusion (" + std::to_string(by_counting) +
                           ") and direct enumeration (" + std::to_string(by_enumeration) +
                           ") disagree at n = " + std::to_string(n));
  return by_counting;
}

InvariantSet invariants_formula(const SubgroupSpec& spec) {
  validate_spec(spec);
  switch (spec.family) {
    case Family::X0: return invariants_x0(spec.level);
    case Family::X1:
    case Family::Xpm1: return invariants_x1(spec.level);
    case Family::Xfull:
    case Family::Xarith: return invariants_xfull(spec.level);
    case Family::Arith1:
    case Family::ArithPm1: return invariants_arith1(spec.m, spec.level);
    case Family::Sp: return invariants_sp(spec.level);
    case Family::SpPlus: return invariants_sp_plus(spec.level);
    case Family::SpStar: return invariants_sp_star(spec.level);
    case Family::Ns: return invariants_ns(spec.level);
    case Family::NsPlus: return invariants_ns_plus(spec.level);
    case Family::NsStar: return invariants_ns_star(spec.level);
    case Family::S4: return invariants_s4(spec.level);
  }
  throw std::logic_error("invariants_formula: unknown family");
}

}  // namespace modcurve
