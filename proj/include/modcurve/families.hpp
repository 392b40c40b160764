#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "modcurve/mat2.hpp"

namespace modcurve {

/// The modular-curve families with closed-form genus invariants.
enum class Family {
  X0,        // Borel: upper-triangular matrices
  X1,        // [1 *; 0 *]
  Xpm1,      // +/- [1 *; 0 *]
  Xfull,     // [1 0; 0 *]; Gamma part is the principal congruence subgroup
  Xarith,    // same subgroup as Xfull
  Arith1,    // [1 M*; 0 *] mod MN
  ArithPm1,  // +/- that
  Sp,        // split Cartan: diagonal
  SpPlus,    // split Cartan normalizer: diagonal plus antidiagonal
  SpStar,    // split Cartan plus one involution per prime dividing N
  Ns,        // nonsplit Cartan: units of an inert quadratic algebra
  NsPlus,    // nonsplit Cartan normalizer
  NsStar,    // nonsplit Cartan plus one involution per prime dividing N
  S4,        // preimage of an S4 subgroup of PGL2(F_p)
};

inline constexpr Family kAllFamilies[] = {
    Family::X0, Family::X1,     Family::Xpm1,   Family::Xfull,  Family::Xarith,
    Family::Arith1, Family::ArithPm1, Family::Sp, Family::SpPlus, Family::SpStar,
    Family::Ns, Family::NsPlus, Family::NsStar, Family::S4,
};

std::string_view family_tag(Family family);
std::optional<Family> parse_family_tag(std::string_view tag);

/// True for the two-parameter families Arith1 and ArithPm1.
bool family_takes_m(Family family);

/// Quadratic algebra Z[alpha]/(N) with alpha^2 = u*alpha - v, chosen so that
/// x^2 - u x + v is irreducible mod every prime dividing the modulus and the
/// discriminant u^2 - 4v is coprime to it.
struct NonsplitAlgebra {
  std::int64_t modulus = 1;
  std::int64_t u = 0;
  std::int64_t v = 0;

  friend bool operator==(const NonsplitAlgebra&, const NonsplitAlgebra&) = default;
};

/// Identifies one modular curve: a family plus its parameters.
/// For Arith1/ArithPm1 the subgroup lives mod m*level; everywhere else mod
/// level. S4 requires level to be an odd prime >= 5.
struct SubgroupSpec {
  Family family = Family::X0;
  std::int64_t level = 1;
  std::int64_t m = 0;  // Arith1/ArithPm1 only; 0 otherwise
  std::optional<NonsplitAlgebra> algebra;  // optional override for Ns families

  std::int64_t modulus() const;

  friend bool operator==(const SubgroupSpec&, const SubgroupSpec&) = default;
};

/// Throws std::invalid_argument if the parameters are not admissible.
void validate_spec(const SubgroupSpec& spec);

/// Short human-readable form, e.g. "ns+ 39" or "arith1 m=2 n=3".
std::string describe(const SubgroupSpec& spec);

/// Deterministic search for an inert quadratic algebra mod n >= 2: smallest
/// v >= 1, then smallest u >= 0, with x^2 - u x + v irreducible mod every
/// prime dividing n and gcd(u^2 - 4v, n) = 1.
NonsplitAlgebra find_nonsplit_algebra(std::int64_t n);

/// Reduction of the algebra mod a divisor q of its modulus.
NonsplitAlgebra reduce_algebra(const NonsplitAlgebra& alg, std::int64_t q);

/// Norm of s + t*alpha: s^2 + u*s*t + v*t^2 reduced mod the algebra modulus.
std::int64_t algebra_norm(const NonsplitAlgebra& alg, std::int64_t s, std::int64_t t);

/// Multiplication-by-(s + t*alpha) as a matrix in the basis {1, alpha}.
Mat2 algebra_mult_matrix(const NonsplitAlgebra& alg, std::int64_t s, std::int64_t t);

/// Generators of the defining subgroup H <= GL2(Z/mod Z) for the family.
std::vector<Mat2> subgroup_generators(const SubgroupSpec& spec);

/// Left-coset representatives of GL2(Z/p^r Z) over the split Cartan:
/// alpha(u, v) = [1+uv u; v 1] for u, v mod p^r and beta(u, v) = [u -1; 1 pv]
/// for u mod p^r, v mod p^{r-1}. Exactly p^{2r} + p^{2r-1} matrices.
std::vector<Mat2> split_transversal_primepower(std::int64_t p, int r);

/// Left-coset representatives of SL2(Z/nZ) over the nonsplit Cartan's SL2
/// part: for each unit norm class a, a fixed y with N(y) = a, and each
/// x mod n, the matrix sending 1 -> y^{-1} and alpha -> conj(y)(alpha + x).
/// Exactly n * phi(n) matrices.
std::vector<Mat2> nonsplit_transversal(std::int64_t n, const NonsplitAlgebra& alg);

/// Generators (two projective generators plus a scalar) of the full preimage
/// in GL2(F_p) of an S4 subgroup of PGL2(F_p); closure has order 24(p-1).
/// Deterministic: first generator pair in lexicographic scan order.
std::vector<Mat2> s4_subgroup(std::int64_t p);

/// True iff det(H) is all of (Z/NZ)^x for the family's subgroup H.
bool det_image_surjective(const SubgroupSpec& spec);

}  // namespace modcurve
