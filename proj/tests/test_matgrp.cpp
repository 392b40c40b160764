#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "modcurve/arith.hpp"
#include "modcurve/families.hpp"
#include "modcurve/matgrp.hpp"

using namespace modcurve;

namespace {

// Independent order oracle: n^3 * prod (1 - 1/p^2) evaluated prime by prime.
std::int64_t sl2_order_oracle(std::int64_t n) {
  std::int64_t total = n * n * n;
  for (const PrimePower& pp : factorize(n)) {
    total /= pp.prime * pp.prime;
    total *= pp.prime * pp.prime - 1;
  }
  return total;
}

GeneratedSubgroup subgroup_for(const SubgroupSpec& spec) {
  std::vector<Mat2> gens = subgroup_generators(spec);
  return close_subgroup(spec.modulus(), gens);
}

}  // namespace

TEST_CASE("sl2 enumeration counts") {
  CHECK(sl2_enumerate(1).size() == 1);
  CHECK(sl2_enumerate(2).size() == 6);
  // 39^3 * (1 - 1/9)(1 - 1/169) = 52416
  CHECK(sl2_order_oracle(39) == 52416);
  CHECK(sl2_order(39) == 52416);
  CHECK(sl2_enumerate(39).size() == 52416);
  for (std::int64_t n = 1; n <= 30; ++n) {
    CHECK(sl2_order(n) == sl2_order_oracle(n));
    std::vector<Mat2> all = sl2_enumerate(n);
    CHECK(static_cast<std::int64_t>(all.size()) == sl2_order_oracle(n));
    for (const Mat2& g : all) CHECK(g.is_sl2());
  }
}

TEST_CASE("sl2 enumeration respects the element cap") {
  EngineLimits limits;
  limits.max_sl2_elements = 100;
  CHECK_THROWS_AS(sl2_enumerate(11, limits), EngineCapExceeded);
  CHECK_NOTHROW(sl2_enumerate(4, limits));
}

TEST_CASE("close_subgroup basics") {
  {
    Mat2 gens[] = {Mat2::identity(5)};
    GeneratedSubgroup sub = close_subgroup(5, gens);
    CHECK(sub.size() == 2);
    CHECK(sub.contains(Mat2::minus_identity(5)));
  }
  {
    // Oracle: the det-1 diagonal matrices mod 5, symmetrized by hand. The set
    // {diag(a, a^-1)} is already closed under negation, so it has size 4.
    std::set<std::uint64_t> expected;
    for (std::int64_t a = 1; a < 5; ++a) {
      Mat2 g = Mat2::diagonal(5, a, mod_inverse(a, 5));
      expected.insert(g.packed());
      expected.insert((Mat2::minus_identity(5) * g).packed());
    }
    CHECK(expected.size() == 4);
    std::vector<Mat2> gens;
    for (std::int64_t a = 1; a < 5; ++a)
      for (std::int64_t d = 1; d < 5; ++d) gens.push_back(Mat2::diagonal(5, a, d));
    GeneratedSubgroup sub = close_subgroup(5, gens);
    CHECK(sub.elements == std::vector<std::uint64_t>(expected.begin(), expected.end()));
  }
  {
    Mat2 gens[] = {Mat2::standard_t(2)};
    GeneratedSubgroup sub = close_subgroup(2, gens);
    CHECK(sub.size() == 2);
    CHECK(sub.contains(Mat2::standard_t(2)));
    CHECK(sub.contains(Mat2::identity(2)));
  }
  {
    Mat2 gens[] = {Mat2::make(6, 2, 0, 0, 1)};  // det 2 is not a unit mod 6
    CHECK_THROWS_AS(close_subgroup(6, gens), std::invalid_argument);
  }
}

TEST_CASE("coset space sizes") {
  {
    GeneratedSubgroup trivial = close_subgroup(3, std::vector<Mat2>{});
    CHECK(trivial.size() == 2);
    CHECK(coset_space(trivial).count() == 12);
  }
  {
    std::vector<Mat2> all = sl2_enumerate(5);
    GeneratedSubgroup full = close_subgroup(5, all);
    CHECK(coset_space(full).count() == 1);
  }
  {
    GeneratedSubgroup cartan = subgroup_for({Family::Sp, 5, 0, {}});
    CHECK(coset_space(cartan).count() == 30);  // GL2-index 25 * 6/5
  }
}

TEST_CASE("coset space partitions SL2") {
  for (std::int64_t n : {6, 8, 12}) {
    CosetSpace cs = coset_space(subgroup_for({Family::X0, n, 0, {}}));
    std::vector<Mat2> all = sl2_enumerate(n);
    // Every element lands in exactly one coset, and two elements share a
    // rep exactly when x * y^-1 lies in the subgroup.
    std::vector<std::int64_t> sizes(cs.count(), 0);
    for (const Mat2& g : all) ++sizes[cs.coset_index(g)];
    for (std::int64_t size : sizes) CHECK(size == cs.subgroup.size());
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 4000; ++trial) {
      const Mat2& x = all[rng() % all.size()];
      const Mat2& y = all[rng() % all.size()];
      bool same = cs.coset_index(x) == cs.coset_index(y);
      CHECK(same == cs.subgroup.contains(x * y.inverse()));
    }
  }
}

TEST_CASE("psl2_index") {
  {
    std::vector<Mat2> all = sl2_enumerate(4);
    CHECK(psl2_index(close_subgroup(4, all)) == 1);
  }
  CHECK(psl2_index(subgroup_for({Family::X0, 11, 0, {}})) == 12);
  CHECK(psl2_index(subgroup_for({Family::NsPlus, 39, 0, {}})) == 468);
  {
    GeneratedSubgroup no_minus;
    no_minus.modulus = 5;
    no_minus.elements = {Mat2::identity(5).packed()};
    CHECK_THROWS_AS(psl2_index(no_minus), std::invalid_argument);
  }
}

TEST_CASE("psl2_index is conjugation invariant") {
  std::mt19937_64 rng(11);
  for (const SubgroupSpec spec :
       {SubgroupSpec{Family::X0, 7, 0, {}}, SubgroupSpec{Family::Sp, 5, 0, {}},
        SubgroupSpec{Family::Ns, 8, 0, {}}}) {
    std::int64_t n = spec.modulus();
    std::vector<Mat2> all = sl2_enumerate(n);
    std::vector<Mat2> gens = subgroup_generators(spec);
    std::int64_t base = psl2_index(close_subgroup(n, gens));
    for (int trial = 0; trial < 5; ++trial) {
      Mat2 c = all[rng() % all.size()];
      Mat2 cinv = c.inverse();
      std::vector<Mat2> conjugated;
      for (const Mat2& g : gens) conjugated.push_back(c * g * cinv);
      CHECK(psl2_index(close_subgroup(n, conjugated)) == base);
    }
  }
}

TEST_CASE("count_fixed") {
  {
    CosetSpace cs = coset_space(subgroup_for({Family::Sp, 5, 0, {}}));
    CHECK(count_fixed(cs, Mat2::identity(5)) == cs.count());
    CHECK(count_fixed(cs, Mat2::standard_s(5)) == 2);  // matches 1 + (-1/5)
  }
  {
    CosetSpace cs = coset_space(subgroup_for({Family::Ns, 7, 0, {}}));
    CHECK(count_fixed(cs, Mat2::standard_s(7)) == 2);  // matches 1 - (-1/7)
  }
}

TEST_CASE("count_orbits") {
  {
    CosetSpace cs = coset_space(subgroup_for({Family::SpPlus, 2, 0, {}}));
    CHECK(count_orbits(cs, Mat2::identity(2)) == cs.count());
    CHECK(count_orbits(cs, Mat2::standard_t(2)) == 2);
  }
  {
    CosetSpace cs = coset_space(subgroup_for({Family::Ns, 15, 0, {}}));
    CHECK(count_orbits(cs, Mat2::standard_t(15)) == 8);  // phi(15)
  }
}

TEST_CASE("orbit sizes sum to the coset count") {
  CosetSpace cs = coset_space(subgroup_for({Family::X0, 10, 0, {}}));
  Mat2 g = Mat2::standard_t(10);
  // Independent orbit walk: follow each coset until it returns.
  std::vector<bool> visited(cs.count(), false);
  std::int64_t orbit_count = 0, total = 0;
  for (std::int32_t i = 0; i < cs.count(); ++i) {
    if (visited[i]) continue;
    ++orbit_count;
    std::int32_t j = i;
    do {
      visited[j] = true;
      ++total;
      j = cs.coset_index(cs.rep(j) * g);
    } while (j != i);
  }
  CHECK(total == cs.count());
  CHECK(count_orbits(cs, g) == orbit_count);
}

TEST_CASE("orbit count matches the fixed-point average on prime levels") {
  // Average number of fixed cosets over the powers of T equals the number of
  // T-orbits (Burnside).
  for (std::int64_t n : {2, 3, 5, 7, 11, 13}) {
    CosetSpace cs = coset_space(subgroup_for({Family::X0, n, 0, {}}));
    Mat2 t = Mat2::standard_t(n);
    Mat2 power = Mat2::identity(n);
    std::int64_t fixed_total = 0;
    for (std::int64_t k = 0; k < n; ++k) {
      fixed_total += count_fixed(cs, power);
      power = power * t;
    }
    CHECK(power == Mat2::identity(n));  // T has order n
    CHECK(fixed_total % n == 0);
    CHECK(count_orbits(cs, t) == fixed_total / n);
  }
}

TEST_CASE("invariants_bruteforce worked examples") {
  InvariantSet borel11 = invariants_bruteforce({Family::X0, 11, 0, {}});
  CHECK(borel11.psl2_index == 12);
  CHECK(borel11.nu2 == 0);
  CHECK(borel11.nu3 == 0);
  CHECK(borel11.cusps == 2);
  CHECK(borel11.genus == 1);
  CHECK(borel11.method == Method::BruteForce);

  InvariantSet ns39 = invariants_bruteforce({Family::NsPlus, 39, 0, {}});
  CHECK(ns39.psl2_index == 468);
  CHECK(ns39.nu2 == 24);
  CHECK(ns39.nu3 == 0);
  CHECK(ns39.cusps == 12);
  CHECK(ns39.genus == 28);

  InvariantSet full7 = invariants_bruteforce({Family::Xfull, 7, 0, {}});
  CHECK(full7.psl2_index == 168);
  CHECK(full7.nu2 == 0);
  CHECK(full7.nu3 == 0);
  CHECK(full7.cusps == 24);
  CHECK(full7.genus == 3);

  InvariantSet one = invariants_bruteforce({Family::X0, 1, 0, {}});
  CHECK(one.psl2_index == 1);
  CHECK(one.genus == 0);
}

TEST_CASE("standard generators have the right orders") {
  for (std::int64_t n : {2, 3, 5, 12}) {
    Mat2 s = Mat2::standard_s(n);
    Mat2 r = Mat2::standard_r(n);
    CHECK(s * s == Mat2::minus_identity(n));
    CHECK(r * r * r == Mat2::identity(n));
    CHECK(Mat2::standard_t(n).det() == 1 % n);
  }
}
