#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "modcurve/families.hpp"
#include "modcurve/formulas.hpp"
#include "modcurve/mat2.hpp"

namespace modcurve {

struct EngineLimits {
  std::int64_t max_sl2_elements = 10'000'000;
};

/// Thrown when an enumeration would exceed EngineLimits.
struct EngineCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// |SL2(Z/nZ)| = n^3 * prod_{p|n} (1 - 1/p^2), computed exactly.
std::int64_t sl2_order(std::int64_t n);

/// All determinant-1 matrices mod n, sorted by (a, b, c, d).
std::vector<Mat2> sl2_enumerate(std::int64_t n, const EngineLimits& limits = {});

/// Plain closure <gens> inside GL2(Z/nZ), sorted. Generators must have unit
/// determinant.
std::vector<Mat2> close_in_gl2(std::int64_t n, std::span<const Mat2> gens);

/// +-(<gens> intersect SL2): always symmetrized, closed under products and
/// inverses, stored as sorted packed keys.
struct GeneratedSubgroup {
  std::int64_t modulus = 1;
  std::vector<std::uint64_t> elements;

  std::int64_t size() const { return static_cast<std::int64_t>(elements.size()); }
  bool contains(const Mat2& g) const;
  bool contains_minus_identity() const;
};

GeneratedSubgroup close_subgroup(std::int64_t n, std::span<const Mat2> gens);

/// Right cosets of a symmetrized subgroup in SL2(Z/nZ). The canonical
/// representative of each coset is its lexicographically least element.
struct CosetSpace {
  GeneratedSubgroup subgroup;
  std::vector<std::uint64_t> elements;   // sorted SL2 enumeration
  std::vector<std::int32_t> coset_of;    // parallel to elements
  std::vector<std::uint64_t> reps;       // lex-least element per coset

  std::int64_t count() const { return static_cast<std::int64_t>(reps.size()); }
  /// Index of the coset containing g; g must lie in SL2.
  std::int32_t coset_index(const Mat2& g) const;
  Mat2 rep(std::int32_t index) const;
};

CosetSpace coset_space(GeneratedSubgroup subgroup, const EngineLimits& limits = {});

/// Index of the symmetrized subgroup's image in PSL2(Z/nZ); equals
/// |SL2| / |subgroup| since both contain -I.
std::int64_t psl2_index(const GeneratedSubgroup& subgroup);

/// Number of cosets x with x g x^{-1} in the subgroup, i.e. cosets fixed by
/// the right action of g.
std::int64_t count_fixed(const CosetSpace& cosets, const Mat2& g);

/// Number of orbits of <g> acting on the cosets by right multiplication.
std::int64_t count_orbits(const CosetSpace& cosets, const Mat2& g);

/// Full invariant tuple computed by exhaustive group theory: realize the
/// family's subgroup, build the coset space, and count.
InvariantSet invariants_bruteforce(const SubgroupSpec& spec, const EngineLimits& limits = {});

}  // namespace modcurve
