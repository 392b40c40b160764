#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "modcurve/families.hpp"
#include "modcurve/formulas.hpp"
#include "modcurve/matgrp.hpp"

namespace modcurve {

/// Outcome of one formula-vs-brute-force comparison. Construction failures
/// are recorded in `error` rather than thrown.
struct CheckEntry {
  SubgroupSpec spec;
  InvariantSet formula;
  InvariantSet bruteforce;
  bool match = false;
  double wall_ms = 0.0;
  std::string error;
};

struct VerificationReport {
  std::vector<CheckEntry> entries;

  std::int64_t matches() const;
  std::int64_t mismatches() const;
  bool all_match() const { return mismatches() == 0; }
};

CheckEntry cross_check(const SubgroupSpec& spec, const EngineLimits& limits = {});

/// Every admissible spec of the family with modulus in [min_level, max_level]:
/// all levels for the one-parameter families, odd primes >= 5 for s4, and all
/// (m, n) pairs with m*n in range for arith1/arithpm1. Ordered by level
/// (modulus), then m.
std::vector<SubgroupSpec> admissible_specs(Family family, std::int64_t min_level,
                                           std::int64_t max_level);

/// cross_check over every admissible spec of every listed family, in
/// deterministic order.
VerificationReport sweep(const std::vector<Family>& families, std::int64_t max_level,
                         const EngineLimits& limits = {});

enum class TransversalKind { Split, Nonsplit };

/// True iff the published coset representatives have the full index count and
/// are pairwise coset-distinct (split: over the Cartan in GL2 at prime-power
/// modulus; nonsplit: over the Cartan's SL2 part).
bool transversal_check(TransversalKind kind, std::int64_t modulus);

/// True iff each of (index, nu2, nu3, cusps) at level n equals the product of
/// the values at the prime-power parts of n. Families sp, ns, sp*, ns*.
bool multiplicativity_check(Family family, std::int64_t n);

/// Deterministic JSON rendering of a report (timings omitted so that repeated
/// runs are byte-identical).
std::string report_to_json(const VerificationReport& report);

}  // namespace modcurve
