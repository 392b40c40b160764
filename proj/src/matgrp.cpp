#include "modcurve/matgrp.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

#include "modcurve/arith.hpp"

namespace modcurve {

namespace {

std::int64_t find_index(const std::vector<std::uint64_t>& sorted, std::uint64_t key) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), key);
  if (it == sorted.end() || *it != key)
    throw std::logic_error("matgrp: element not found in enumeration");
  return it - sorted.begin();
}

// Closure of {start} union gens under right multiplication by gens; in a
// finite group this is the generated subgroup.
std::vector<std::uint64_t> bfs_closure(std::int64_t n, std::span<const Mat2> gens) {
  std::vector<Mat2> gen_list;
  gen_list.reserve(gens.size());
  for (const Mat2& g : gens) {
    if (g.n != n) throw std::invalid_argument("close: generator modulus mismatch");
    if (!g.has_unit_det()) throw std::invalid_argument("close: generator has non-unit determinant");
    gen_list.push_back(g);
  }
  std::unordered_set<std::uint64_t> seen;
  std::vector<Mat2> frontier{Mat2::identity(n)};
  seen.insert(frontier.front().packed());
  while (!frontier.empty()) {
    std::vector<Mat2> next;
    for (const Mat2& x : frontier) {
      for (const Mat2& g : gen_list) {
        Mat2 y = x * g;
        if (seen.insert(y.packed()).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::uint64_t> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::int64_t sl2_order(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("sl2_order: modulus must be >= 1");
  std::int64_t total = 1;
  for (const PrimePower& f : factorize(n)) {
    // p^{3e-2} * (p^2 - 1) per prime power
    std::int64_t p2 = checked_mul(f.prime, f.prime);
    total = checked_mul(total, checked_pow(f.prime, 3 * f.exponent - 2));
    total = checked_mul(total, p2 - 1);
  }
  return total;
}

std::vector<Mat2> sl2_enumerate(std::int64_t n, const EngineLimits& limits) {
  if (n < 1) throw std::invalid_argument("sl2_enumerate: modulus must be >= 1");
  std::int64_t expected = sl2_order(n);
  if (expected > limits.max_sl2_elements)
    throw EngineCapExceeded("sl2_enumerate: |SL2(Z/" + std::to_string(n) + ")| = " +
                            std::to_string(expected) + " exceeds cap " +
                            std::to_string(limits.max_sl2_elements));
  std::vector<Mat2> out;
  out.reserve(expected);
  if (n == 1) {
    out.push_back(Mat2::identity(1));
    return out;
  }
  // For each unimodular first row (a, b), the second rows are a single
  // solution (c0, d0) of a*d - b*c = 1 shifted by t*(a, b).
  for (std::int64_t a = 0; a < n; ++a) {
    for (std::int64_t b = 0; b < n; ++b) {
      std::int64_t g = std::gcd(a, b);
      if (std::gcd(g, n) != 1) continue;
      std::int64_t x = 0, y = 0;
      // ext gcd over the integers: a*x + b*y = g
      {
        std::int64_t r0 = a, r1 = b, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
        while (r1 != 0) {
          std::int64_t q = r0 / r1;
          std::int64_t t = r0 - q * r1;
          r0 = r1;
          r1 = t;
          t = x0 - q * x1;
          x0 = x1;
          x1 = t;
          t = y0 - q * y1;
          y0 = y1;
          y1 = t;
        }
        x = x0;
        y = y0;
      }
      std::int64_t ginv = mod_inverse(g, n);
      std::int64_t d0 = mod_reduce(x % n * ginv, n);
      std::int64_t c0 = mod_reduce(-(y % n) * ginv, n);
      for (std::int64_t t = 0; t < n; ++t) {
        std::int64_t c = (c0 + t * a) % n;
        std::int64_t d = (d0 + t * b) % n;
        out.push_back(Mat2{n, a, b, c, d});
      }
    }
  }
  if (static_cast<std::int64_t>(out.size()) != expected)
    throw std::logic_error("sl2_enumerate: count does not match the order formula");
  std::sort(out.begin(), out.end(),
            [](const Mat2& l, const Mat2& r) { return l.packed() < r.packed(); });
  return out;
}

std::vector<Mat2> close_in_gl2(std::int64_t n, std::span<const Mat2> gens) {
  std::vector<std::uint64_t> keys = bfs_closure(n, gens);
  std::vector<Mat2> out;
  out.reserve(keys.size());
  for (std::uint64_t key : keys) out.push_back(Mat2::unpack(n, key));
  return out;
}

bool GeneratedSubgroup::contains(const Mat2& g) const {
  if (g.n != modulus) return false;
  return std::binary_search(elements.begin(), elements.end(), g.packed());
}

bool GeneratedSubgroup::contains_minus_identity() const {
  return contains(Mat2::minus_identity(modulus));
}

GeneratedSubgroup close_subgroup(std::int64_t n, std::span<const Mat2> gens) {
  std::vector<Mat2> with_minus(gens.begin(), gens.end());
  with_minus.push_back(Mat2::minus_identity(n));
  std::vector<std::uint64_t> closure = bfs_closure(n, with_minus);
  GeneratedSubgroup sub;
  sub.modulus = n;
  for (std::uint64_t key : closure)
    if (Mat2::unpack(n, key).is_sl2()) sub.elements.push_back(key);
  return sub;
}

std::int32_t CosetSpace::coset_index(const Mat2& g) const {
  if (g.n != subgroup.modulus) throw std::invalid_argument("coset_index: modulus mismatch");
  return coset_of[find_index(elements, g.packed())];
}

Mat2 CosetSpace::rep(std::int32_t index) const {
  return Mat2::unpack(subgroup.modulus, reps.at(index));
}

CosetSpace coset_space(GeneratedSubgroup subgroup, const EngineLimits& limits) {
  std::int64_t n = subgroup.modulus;
  CosetSpace cs;
  std::vector<Mat2> sl2 = sl2_enumerate(n, limits);
  cs.elements.reserve(sl2.size());
  for (const Mat2& g : sl2) cs.elements.push_back(g.packed());
  cs.coset_of.assign(cs.elements.size(), -1);

  std::vector<Mat2> members;
  members.reserve(subgroup.elements.size());
  for (std::uint64_t key : subgroup.elements) members.push_back(Mat2::unpack(n, key));

  // Ascending sweep: the first unassigned element of a coset is its
  // lexicographic minimum.
  for (std::size_t pos = 0; pos < cs.elements.size(); ++pos) {
    if (cs.coset_of[pos] != -1) continue;
    auto rep_index = static_cast<std::int32_t>(cs.reps.size());
    cs.reps.push_back(cs.elements[pos]);
    Mat2 x = Mat2::unpack(n, cs.elements[pos]);
    for (const Mat2& h : members) {
      std::int64_t where = find_index(cs.elements, (h * x).packed());
      if (cs.coset_of[where] != -1 && cs.coset_of[where] != rep_index)
        throw std::logic_error("coset_space: inconsistent partition");
      cs.coset_of[where] = rep_index;
    }
  }
  if (cs.reps.size() * members.size() != cs.elements.size())
    throw std::logic_error("coset_space: |reps| * |subgroup| != |SL2|");
  cs.subgroup = std::move(subgroup);
  return cs;
}

std::int64_t psl2_index(const GeneratedSubgroup& subgroup) {
  if (!subgroup.contains_minus_identity())
    throw std::invalid_argument("psl2_index: subgroup is not symmetrized");
  std::int64_t order = sl2_order(subgroup.modulus);
  if (order % subgroup.size() != 0)
    throw std::logic_error("psl2_index: subgroup order does not divide |SL2|");
  return order / subgroup.size();
}

std::int64_t count_fixed(const CosetSpace& cosets, const Mat2& g) {
  if (!g.is_sl2()) throw std::invalid_argument("count_fixed: matrix must lie in SL2");
  std::int64_t fixed = 0;
  for (std::uint64_t key : cosets.reps) {
    Mat2 x = Mat2::unpack(cosets.subgroup.modulus, key);
    if (cosets.subgroup.contains(x * g * x.inverse())) ++fixed;
  }
  return fixed;
}

std::int64_t count_orbits(const CosetSpace& cosets, const Mat2& g) {
  if (!g.is_sl2()) throw std::invalid_argument("count_orbits: matrix must lie in SL2");
  std::int64_t n_cosets = cosets.count();
  std::vector<std::int32_t> next(n_cosets);
  for (std::int32_t i = 0; i < n_cosets; ++i) next[i] = cosets.coset_index(cosets.rep(i) * g);
  std::vector<bool> visited(n_cosets, false);
  std::int64_t orbits = 0;
  for (std::int32_t i = 0; i < n_cosets; ++i) {
    if (visited[i]) continue;
    ++orbits;
    for (std::int32_t j = i; !visited[j]; j = next[j]) visited[j] = true;
  }
  return orbits;
}

InvariantSet invariants_bruteforce(const SubgroupSpec& spec, const EngineLimits& limits) {
  validate_spec(spec);
  std::int64_t n = spec.modulus();
  std::vector<Mat2> gens = subgroup_generators(spec);
  GeneratedSubgroup sub = close_subgroup(n, gens);
  CosetSpace cs = coset_space(std::move(sub), limits);

  InvariantSet inv;
  inv.psl2_index = psl2_index(cs.subgroup);
  inv.nu2 = count_fixed(cs, Mat2::standard_s(n));
  inv.nu3 = count_fixed(cs, Mat2::standard_r(n));
  inv.cusps = count_orbits(cs, Mat2::standard_t(n));
  inv.genus = genus_from_invariants(inv.psl2_index, inv.nu2, inv.nu3, inv.cusps);
  inv.method = Method::BruteForce;
  return inv;
}

}  // namespace modcurve
