#pragma once

#include <cstdint>
#include <string_view>

#include "modcurve/families.hpp"

namespace modcurve {

enum class Method { Formula, BruteForce };

std::string_view method_tag(Method method);

/// The genus-formula invariants of one modular curve: PSL2-index, number of
/// elliptic points of orders 2 and 3, number of cusps, and the genus
/// 1 + i/12 - nu2/4 - nu3/3 - cusps/2.
struct InvariantSet {
  std::int64_t psl2_index = 1;
  std::int64_t nu2 = 0;
  std::int64_t nu3 = 0;
  std::int64_t cusps = 0;
  std::int64_t genus = 0;
  Method method = Method::Formula;

  /// Componentwise equality of the five numeric invariants (method ignored).
  bool same_values(const InvariantSet& other) const;
};

/// Exact genus (12 + i - 3*nu2 - 4*nu3 - 6*cusps) / 12; throws
/// std::invalid_argument when the result is negative or not divisible by 12.
std::int64_t genus_from_invariants(std::int64_t psl2_index, std::int64_t nu2, std::int64_t nu3,
                                   std::int64_t cusps);

InvariantSet invariants_x0(std::int64_t n);
InvariantSet invariants_x1(std::int64_t n);      // also X_{+-1}
InvariantSet invariants_xfull(std::int64_t n);   // also X_arith
InvariantSet invariants_arith1(std::int64_t m, std::int64_t n);  // also arith +-1
InvariantSet invariants_sp(std::int64_t n);
InvariantSet invariants_sp_plus(std::int64_t n);
InvariantSet invariants_sp_star(std::int64_t n);
InvariantSet invariants_ns(std::int64_t n);
InvariantSet invariants_ns_plus(std::int64_t n);
InvariantSet invariants_ns_star(std::int64_t n);
InvariantSet invariants_s4(std::int64_t p);

/// #S for the nonsplit normalizer's nu2: classes +-(a + b*alpha) of norm -1
/// with gcd(b, N) > 1. Computed both by inclusion-exclusion over the primes
/// dividing N and by direct enumeration; throws std::logic_error if the two
/// routes disagree.
std::int64_t ns_sharp_S(std::int64_t n);

/// Closed-form invariants for any family.
InvariantSet invariants_formula(const SubgroupSpec& spec);

}  // namespace modcurve
