#include "modcurve/families.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "modcurve/arith.hpp"

namespace modcurve {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

std::vector<std::int64_t> units_mod(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t r = 0; r < n; ++r)
    if (std::gcd(r, n) == 1) out.push_back(r);
  if (n == 1) out.push_back(0);
  return out;
}

// Entrywise CRT lift of a matrix given mod q to the full modulus n, with the
// identity at every other prime.
Mat2 lift_with_identity(std::int64_t n, std::int64_t q, const Mat2& local) {
  std::int64_t rest = n / q;
  auto entry = [&](std::int64_t at_q, std::int64_t at_rest) {
    Residue parts[] = {{at_q, q}, {at_rest, rest}};
    return crt_lift(parts);
  };
  return Mat2::make(n, entry(local.a, 1), entry(local.b, 0), entry(local.c, 0),
                    entry(local.d, 1));
}

// The ring involution alpha -> u - alpha as a matrix in the basis {1, alpha}.
Mat2 conjugation_matrix(std::int64_t n, std::int64_t u) { return Mat2::make(n, 1, u, 0, -1); }

bool irreducible_mod_p(std::int64_t u, std::int64_t v, std::int64_t p) {
  for (std::int64_t x = 0; x < p; ++x)
    if (mod_reduce(x * x - u * x + v, p) == 0) return false;
  return true;
}

std::vector<Mat2> borel_generators(std::int64_t n) {
  std::vector<Mat2> gens{Mat2::standard_t(n)};
  for (std::int64_t r : units_mod(n)) {
    gens.push_back(Mat2::diagonal(n, r, 1));
    gens.push_back(Mat2::diagonal(n, 1, r));
  }
  return gens;
}

std::vector<Mat2> x1_generators(std::int64_t n) {
  std::vector<Mat2> gens{Mat2::standard_t(n)};
  for (std::int64_t r : units_mod(n)) gens.push_back(Mat2::diagonal(n, 1, r));
  return gens;
}

std::vector<Mat2> xfull_generators(std::int64_t n) {
  std::vector<Mat2> gens;
  for (std::int64_t r : units_mod(n)) gens.push_back(Mat2::diagonal(n, 1, r));
  return gens;
}

std::vector<Mat2> arith1_generators(std::int64_t m, std::int64_t n) {
  std::int64_t mod = checked_mul(m, n);
  std::vector<Mat2> gens{Mat2::make(mod, 1, m, 0, 1)};
  for (std::int64_t r : units_mod(mod)) gens.push_back(Mat2::diagonal(mod, 1, r));
  return gens;
}

std::vector<Mat2> split_cartan_generators(std::int64_t n) {
  std::vector<Mat2> gens;
  for (std::int64_t r : units_mod(n)) {
    gens.push_back(Mat2::diagonal(n, r, 1));
    gens.push_back(Mat2::diagonal(n, 1, r));
  }
  return gens;
}

// One involution per prime dividing n: the swap at that prime, identity at
// the others.
std::vector<Mat2> split_prime_involutions(std::int64_t n) {
  std::vector<Mat2> out;
  for (const PrimePower& pp : factorize(n)) {
    std::int64_t q = checked_pow(pp.prime, pp.exponent);
    out.push_back(lift_with_identity(n, q, Mat2::make(q, 0, 1, 1, 0)));
  }
  return out;
}

// Unit groups of the local algebras, each lifted with identity elsewhere;
// together they generate the full nonsplit Cartan. (The Cartan is not
// generated by scalars and alpha alone: alpha can have small multiplicative
// order.)
std::vector<Mat2> nonsplit_cartan_generators(std::int64_t n, const NonsplitAlgebra& alg) {
  std::vector<Mat2> gens;
  for (const PrimePower& pp : factorize(n)) {
    std::int64_t q = checked_pow(pp.prime, pp.exponent);
    NonsplitAlgebra local = reduce_algebra(alg, q);
    for (std::int64_t s = 0; s < q; ++s)
      for (std::int64_t t = 0; t < q; ++t) {
        if (std::gcd(algebra_norm(local, s, t), q) != 1) continue;
        gens.push_back(lift_with_identity(n, q, algebra_mult_matrix(local, s, t)));
      }
  }
  return gens;
}

std::vector<Mat2> nonsplit_prime_involutions(std::int64_t n, const NonsplitAlgebra& alg) {
  std::vector<Mat2> out;
  for (const PrimePower& pp : factorize(n)) {
    std::int64_t q = checked_pow(pp.prime, pp.exponent);
    out.push_back(lift_with_identity(n, q, conjugation_matrix(q, mod_reduce(alg.u, q))));
  }
  return out;
}

std::int64_t smallest_primitive_root(std::int64_t p) {
  std::int64_t group_order = p - 1;
  Factorization f = factorize(group_order);
  for (std::int64_t g = 2; g < p; ++g) {
    bool primitive = true;
    for (const PrimePower& pp : f) {
      // g^((p-1)/q) = 1 would mean g generates a proper subgroup.
      std::int64_t e = group_order / pp.prime;
      std::int64_t acc = 1, base = g;
      while (e > 0) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
      }
      if (acc == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) return g;
  }
  throw std::logic_error("smallest_primitive_root: no generator found");
}

bool is_scalar(const Mat2& g) { return g.b == 0 && g.c == 0 && g.a == g.d; }

int projective_order(const Mat2& g) {
  Mat2 x = g;
  int k = 1;
  while (!is_scalar(x)) {
    x = x * g;
    ++k;
  }
  return k;
}

// Canonical representative in PGL2: scale so the first nonzero entry in
// row-major order is 1.
Mat2 projective_canonical(const Mat2& g) {
  std::int64_t lead = g.a != 0 ? g.a : (g.b != 0 ? g.b : (g.c != 0 ? g.c : g.d));
  std::int64_t inv = mod_inverse(lead, g.n);
  return Mat2::make(g.n, inv * g.a, inv * g.b, inv * g.c, inv * g.d);
}

// Size of <g, h> in PGL2, abandoning the count once it exceeds the cap.
std::size_t projective_closure_size(const Mat2& g, const Mat2& h, std::size_t cap) {
  std::set<std::uint64_t> seen{projective_canonical(Mat2::identity(g.n)).packed()};
  std::vector<Mat2> frontier{Mat2::identity(g.n)};
  while (!frontier.empty()) {
    std::vector<Mat2> next;
    for (const Mat2& x : frontier)
      for (const Mat2* gen : {&g, &h}) {
        Mat2 y = projective_canonical(x * *gen);
        if (seen.insert(y.packed()).second) {
          if (seen.size() > cap) return cap + 1;
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  return seen.size();
}

// Matrices of PGL2(F_p) in canonical form, visited in lexicographic order.
template <typename Fn>
void scan_pgl2(std::int64_t p, Fn&& visit) {
  for (std::int64_t c = 1; c < p; ++c)
    for (std::int64_t d = 0; d < p; ++d)
      if (visit(Mat2::make(p, 0, 1, c, d))) return;
  for (std::int64_t b = 0; b < p; ++b)
    for (std::int64_t c = 0; c < p; ++c)
      for (std::int64_t d = 0; d < p; ++d) {
        Mat2 g = Mat2::make(p, 1, b, c, d);
        if (!g.has_unit_det()) continue;
        if (visit(g)) return;
      }
}

}  // namespace

std::string_view family_tag(Family family) {
  switch (family) {
    case Family::X0: return "x0";
    case Family::X1: return "x1";
    case Family::Xpm1: return "xpm1";
    case Family::Xfull: return "xfull";
    case Family::Xarith: return "xarith";
    case Family::Arith1: return "arith1";
    case Family::ArithPm1: return "arithpm1";
    case Family::Sp: return "sp";
    case Family::SpPlus: return "sp+";
    case Family::SpStar: return "sp*";
    case Family::Ns: return "ns";
    case Family::NsPlus: return "ns+";
    case Family::NsStar: return "ns*";
    case Family::S4: return "s4";
  }
  throw std::logic_error("family_tag: unknown family");
}

std::optional<Family> parse_family_tag(std::string_view tag) {
  for (Family family : kAllFamilies)
    if (family_tag(family) == tag) return family;
  return std::nullopt;
}

bool family_takes_m(Family family) {
  return family == Family::Arith1 || family == Family::ArithPm1;
}

std::int64_t SubgroupSpec::modulus() const {
  if (family_takes_m(family)) return checked_mul(m, level);
  return level;
}

void validate_spec(const SubgroupSpec& spec) {
  if (spec.level < 1) fail("spec: level must be >= 1");
  if (family_takes_m(spec.family)) {
    if (spec.m < 1) fail("spec: " + std::string(family_tag(spec.family)) + " requires m >= 1");
  } else if (spec.m != 0) {
    fail("spec: m is only meaningful for arith1/arithpm1");
  }
  if (spec.family == Family::S4) {
    if (spec.level < 5 || !is_prime(spec.level) || spec.level % 2 == 0)
      fail("spec: s4 requires an odd prime level >= 5");
  }
  if (spec.algebra) {
    if (spec.family != Family::Ns && spec.family != Family::NsPlus &&
        spec.family != Family::NsStar)
      fail("spec: algebra override applies only to ns families");
    const NonsplitAlgebra& alg = *spec.algebra;
    if (alg.modulus != spec.level) fail("spec: algebra modulus must equal the level");
    for (const PrimePower& pp : factorize(spec.level))
      if (!irreducible_mod_p(alg.u, alg.v, pp.prime))
        fail("spec: algebra polynomial is reducible mod a prime dividing the level");
    if (std::gcd(std::abs(alg.u * alg.u - 4 * alg.v), spec.level) != 1)
      fail("spec: algebra discriminant shares a factor with the level");
  }
}

std::string describe(const SubgroupSpec& spec) {
  std::string out(family_tag(spec.family));
  if (family_takes_m(spec.family))
    out += " m=" + std::to_string(spec.m) + " n=" + std::to_string(spec.level);
  else
    out += " " + std::to_string(spec.level);
  return out;
}

NonsplitAlgebra reduce_algebra(const NonsplitAlgebra& alg, std::int64_t q) {
  if (q < 1 || alg.modulus % q != 0)
    fail("reduce_algebra: target modulus must divide the algebra modulus");
  return NonsplitAlgebra{q, mod_reduce(alg.u, q), mod_reduce(alg.v, q)};
}

std::int64_t algebra_norm(const NonsplitAlgebra& alg, std::int64_t s, std::int64_t t) {
  return mod_reduce(s * s + alg.u * s * t + alg.v * t * t, alg.modulus);
}

Mat2 algebra_mult_matrix(const NonsplitAlgebra& alg, std::int64_t s, std::int64_t t) {
  return Mat2::make(alg.modulus, s, -alg.v * t, t, s + alg.u * t);
}

NonsplitAlgebra find_nonsplit_algebra(std::int64_t n) {
  if (n < 2) fail("find_nonsplit_algebra: modulus must be >= 2");
  Factorization f = factorize(n);
  for (std::int64_t v = 1; v <= 4 * n; ++v)
    for (std::int64_t u = 0; u <= 4 * n; ++u) {
      if (std::gcd(std::abs(u * u - 4 * v), n) != 1) continue;
      bool ok = true;
      for (const PrimePower& pp : f)
        if (!irreducible_mod_p(u, v, pp.prime)) {
          ok = false;
          break;
        }
      if (ok) return NonsplitAlgebra{n, u, v};
    }
  throw std::logic_error("find_nonsplit_algebra: search bound exhausted");
}

std::vector<Mat2> subgroup_generators(const SubgroupSpec& spec) {
  validate_spec(spec);
  std::int64_t n = spec.modulus();
  switch (spec.family) {
    case Family::X0: return borel_generators(n);
    case Family::X1: return x1_generators(n);
    case Family::Xpm1: {
      std::vector<Mat2> gens = x1_generators(n);
      gens.push_back(Mat2::minus_identity(n));
      return gens;
    }
    case Family::Xfull:
    case Family::Xarith: return xfull_generators(n);
    case Family::Arith1: return arith1_generators(spec.m, spec.level);
    case Family::ArithPm1: {
      std::vector<Mat2> gens = arith1_generators(spec.m, spec.level);
      gens.push_back(Mat2::minus_identity(n));
      return gens;
    }
    case Family::Sp: return split_cartan_generators(n);
    case Family::SpPlus: {
      std::vector<Mat2> gens = split_cartan_generators(n);
      gens.push_back(Mat2::make(n, 0, 1, 1, 0));
      return gens;
    }
    case Family::SpStar: {
      std::vector<Mat2> gens = split_cartan_generators(n);
      for (const Mat2& w : split_prime_involutions(n)) gens.push_back(w);
      return gens;
    }
    case Family::Ns:
    case Family::NsPlus:
    case Family::NsStar: {
      if (n == 1) return {Mat2::identity(1)};
      NonsplitAlgebra alg = spec.algebra ? *spec.algebra : find_nonsplit_algebra(n);
      std::vector<Mat2> gens = nonsplit_cartan_generators(n, alg);
      if (spec.family == Family::NsPlus)
        gens.push_back(conjugation_matrix(n, mod_reduce(alg.u, n)));
      if (spec.family == Family::NsStar)
        for (const Mat2& w : nonsplit_prime_involutions(n, alg)) gens.push_back(w);
      return gens;
    }
    case Family::S4: return s4_subgroup(spec.level);
  }
  throw std::logic_error("subgroup_generators: unknown family");
}

std::vector<Mat2> split_transversal_primepower(std::int64_t p, int r) {
  if (!is_prime(p) || r < 1) fail("split_transversal_primepower: modulus must be a prime power");
  std::int64_t q = checked_pow(p, r);
  std::int64_t qp = q / p;
  std::vector<Mat2> out;
  out.reserve(q * q + q * qp);
  for (std::int64_t u = 0; u < q; ++u)
    for (std::int64_t v = 0; v < q; ++v) out.push_back(Mat2::make(q, 1 + u * v, u, v, 1));
  // beta's bottom-right entry p*v only depends on v mod p^{r-1}
  for (std::int64_t u = 0; u < q; ++u)
    for (std::int64_t v = 0; v < qp; ++v) out.push_back(Mat2::make(q, u, -1, 1, p * v));
  return out;
}

std::vector<Mat2> nonsplit_transversal(std::int64_t n, const NonsplitAlgebra& alg) {
  if (n < 2) fail("nonsplit_transversal: modulus must be >= 2");
  NonsplitAlgebra local = reduce_algebra(alg, n);
  std::int64_t u = local.u;
  std::int64_t v = local.v;
  std::vector<Mat2> out;
  for (std::int64_t a : units_mod(n)) {
    // Fixed norm-a element: scan t, then s, so a = 1 picks y = 1.
    std::int64_t ys = -1, yt = -1;
    for (std::int64_t t = 0; t < n && ys < 0; ++t)
      for (std::int64_t s = 0; s < n; ++s)
        if (algebra_norm(local, s, t) == a) {
          ys = s;
          yt = t;
          break;
        }
    if (ys < 0) throw std::logic_error("nonsplit_transversal: norm map failed to hit a unit");
    // y^{-1} = conj(y) / N(y); conj(y) = (s + t*u) - t*alpha.
    std::int64_t ninv = mod_inverse(a, n);
    std::int64_t inv_1 = mod_reduce(ninv * mod_reduce(ys + yt * u, n), n);
    std::int64_t inv_alpha = mod_reduce(-ninv * yt, n);
    for (std::int64_t x = 0; x < n; ++x) {
      // conj(y)*(alpha + x) = (x*(s+tu) + t*v) + (s - x*t)*alpha
      std::int64_t col2_1 = mod_reduce(x * mod_reduce(ys + yt * u, n) + yt * v, n);
      std::int64_t col2_alpha = mod_reduce(ys - x * yt, n);
      out.push_back(Mat2::make(n, inv_1, col2_1, inv_alpha, col2_alpha));
    }
  }
  return out;
}

std::vector<Mat2> s4_subgroup(std::int64_t p) {
  if (p < 5 || !is_prime(p)) fail("s4_subgroup: level must be a prime >= 5");
  Mat2 found_g = Mat2::identity(p), found_h = Mat2::identity(p);
  bool found = false;
  scan_pgl2(p, [&](const Mat2& g) {
    if (projective_order(g) != 4) return false;
    scan_pgl2(p, [&](const Mat2& h) {
      if (projective_order(h) != 3) return false;
      if (projective_closure_size(g, h, 24) != 24) return false;
      found_g = g;
      found_h = h;
      found = true;
      return true;
    });
    return found;
  });
  if (!found) throw std::logic_error("s4_subgroup: no generating pair found");
  std::int64_t root = smallest_primitive_root(p);
  return {found_g, found_h, Mat2::diagonal(p, root, root)};
}

bool det_image_surjective(const SubgroupSpec& spec) {
  validate_spec(spec);
  std::int64_t n = spec.modulus();
  // det is a homomorphism, so the determinant image is the subgroup of
  // (Z/nZ)^x generated by the generators' determinants.
  std::set<std::int64_t> image{1 % n};
  std::vector<std::int64_t> frontier{1 % n};
  std::vector<std::int64_t> dets;
  for (const Mat2& g : subgroup_generators(spec)) dets.push_back(g.det());
  while (!frontier.empty()) {
    std::vector<std::int64_t> next;
    for (std::int64_t x : frontier)
      for (std::int64_t d : dets) {
        std::int64_t y = mod_reduce(x * d, n);
        if (image.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return static_cast<std::int64_t>(image.size()) == euler_phi(n);
}

}  // namespace modcurve
