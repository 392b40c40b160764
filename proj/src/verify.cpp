#include "modcurve/verify.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "modcurve/arith.hpp"

namespace modcurve {

namespace {

bool in_split_cartan(const Mat2& g) {
  return g.b == 0 && g.c == 0 && std::gcd(g.a, g.n) == 1 && std::gcd(g.d, g.n) == 1;
}

bool in_nonsplit_sl2(const NonsplitAlgebra& alg, const Mat2& g) {
  // Multiplication matrices are determined by their first column (s, t).
  return g == algebra_mult_matrix(alg, g.a, g.c) && algebra_norm(alg, g.a, g.c) == 1;
}

template <typename MemberFn>
bool pairwise_coset_distinct(const std::vector<Mat2>& reps, MemberFn&& member) {
  for (std::size_t i = 0; i < reps.size(); ++i) {
    Mat2 inv = reps[i].inverse();
    for (std::size_t j = i + 1; j < reps.size(); ++j)
      if (member(inv * reps[j])) return false;
  }
  return true;
}

}  // namespace

std::int64_t VerificationReport::matches() const {
  return std::count_if(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.match; });
}

std::int64_t VerificationReport::mismatches() const {
  return static_cast<std::int64_t>(entries.size()) - matches();
}

CheckEntry cross_check(const SubgroupSpec& spec, const EngineLimits& limits) {
  CheckEntry entry;
  entry.spec = spec;
  auto start = std::chrono::steady_clock::now();
  try {
    entry.formula = invariants_formula(spec);
    entry.bruteforce = invariants_bruteforce(spec, limits);
    entry.match = entry.formula.same_values(entry.bruteforce);
  } catch (const std::exception& e) {
    entry.error = e.what();
    entry.match = false;
  }
  entry.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return entry;
}

std::vector<SubgroupSpec> admissible_specs(Family family, std::int64_t min_level,
                                           std::int64_t max_level) {
  std::vector<SubgroupSpec> specs;
  if (min_level < 1) min_level = 1;
  if (family == Family::S4) {
    for (std::int64_t p = std::max<std::int64_t>(min_level, 5); p <= max_level; ++p)
      if (is_prime(p) && p % 2 == 1) specs.push_back({family, p, 0, {}});
    return specs;
  }
  if (family_takes_m(family)) {
    for (std::int64_t mod = min_level; mod <= max_level; ++mod)
      for (std::int64_t n = 1; n <= mod; ++n) {
        if (mod % n != 0) continue;
        specs.push_back({family, n, mod / n, {}});
      }
    // level (= n) ascending, then m
    std::sort(specs.begin(), specs.end(), [](const SubgroupSpec& l, const SubgroupSpec& r) {
      return std::tie(l.level, l.m) < std::tie(r.level, r.m);
    });
    return specs;
  }
  for (std::int64_t n = min_level; n <= max_level; ++n) specs.push_back({family, n, 0, {}});
  return specs;
}

VerificationReport sweep(const std::vector<Family>& families, std::int64_t max_level,
                         const EngineLimits& limits) {
  VerificationReport report;
  for (Family family : families)
    for (const SubgroupSpec& spec : admissible_specs(family, 1, max_level))
      report.entries.push_back(cross_check(spec, limits));
  return report;
}

bool transversal_check(TransversalKind kind, std::int64_t modulus) {
  if (kind == TransversalKind::Split) {
    Factorization f = factorize(modulus);
    if (f.size() != 1) throw std::invalid_argument("transversal_check: split requires a prime power");
    std::int64_t p = f[0].prime;
    int r = f[0].exponent;
    std::vector<Mat2> reps = split_transversal_primepower(p, r);
    // GL2-index of the split Cartan: N^2 (1 + 1/p)
    std::int64_t index = checked_mul(checked_mul(modulus, modulus / p), p + 1);
    if (static_cast<std::int64_t>(reps.size()) != index) return false;
    return pairwise_coset_distinct(reps, in_split_cartan);
  }
  NonsplitAlgebra alg = find_nonsplit_algebra(modulus);
  std::vector<Mat2> reps = nonsplit_transversal(modulus, alg);
  std::int64_t index = checked_mul(modulus, euler_phi(modulus));
  if (static_cast<std::int64_t>(reps.size()) != index) return false;
  for (const Mat2& g : reps)
    if (!g.is_sl2()) return false;
  return pairwise_coset_distinct(reps,
                                 [&](const Mat2& g) { return in_nonsplit_sl2(alg, g); });
}

bool multiplicativity_check(Family family, std::int64_t n) {
  if (family != Family::Sp && family != Family::Ns && family != Family::SpStar &&
      family != Family::NsStar)
    throw std::invalid_argument("multiplicativity_check: family must be sp, ns, sp*, or ns*");
  if (n < 2) throw std::invalid_argument("multiplicativity_check: level must be >= 2");
  InvariantSet at_n = invariants_formula({family, n, 0, {}});
  std::int64_t index = 1, nu2 = 1, nu3 = 1, cusps = 1;
  for (const PrimePower& pp : factorize(n)) {
    InvariantSet part = invariants_formula({family, checked_pow(pp.prime, pp.exponent), 0, {}});
    index = checked_mul(index, part.psl2_index);
    nu2 = checked_mul(nu2, part.nu2);
    nu3 = checked_mul(nu3, part.nu3);
    cusps = checked_mul(cusps, part.cusps);
  }
  return at_n.psl2_index == index && at_n.nu2 == nu2 && at_n.nu3 == nu3 && at_n.cusps == cusps;
}

std::string report_to_json(const VerificationReport& report) {
  nlohmann::json entries = nlohmann::json::array();
  for (const CheckEntry& e : report.entries) {
    nlohmann::json row;
    row["family"] = std::string(family_tag(e.spec.family));
    row["level"] = e.spec.level;
    row["m"] = e.spec.m;
    row["match"] = e.match;
    if (!e.error.empty()) {
      row["error"] = e.error;
    } else {
      auto inv_json = [](const InvariantSet& inv) {
        return nlohmann::json{{"psl2_index", inv.psl2_index},
                              {"nu2", inv.nu2},
                              {"nu3", inv.nu3},
                              {"cusps", inv.cusps},
                              {"genus", inv.genus}};
      };
      row["formula"] = inv_json(e.formula);
      row["bruteforce"] = inv_json(e.bruteforce);
    }
    entries.push_back(std::move(row));
  }
  nlohmann::json out;
  out["entries"] = std::move(entries);
  out["matches"] = report.matches();
  out["mismatches"] = report.mismatches();
  return out.dump(2);
}

}  // namespace modcurve
