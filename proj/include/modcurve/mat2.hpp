#pragma once

#include <cstdint>

namespace modcurve {

/// 2x2 matrix over Z/nZ with entries reduced to [0, n).
///
/// Matrices pack into a single 64-bit key (16 bits per entry), which caps the
/// modulus at 65535; the key order coincides with the row-major lexicographic
/// order on (a, b, c, d) used for canonical coset representatives.
struct Mat2 {
  std::int64_t n = 1;
  std::int64_t a = 0, b = 0, c = 0, d = 0;

  static constexpr std::int64_t kMaxModulus = 65535;

  static Mat2 make(std::int64_t n, std::int64_t a, std::int64_t b, std::int64_t c,
                   std::int64_t d);
  static Mat2 identity(std::int64_t n);
  static Mat2 minus_identity(std::int64_t n);
  static Mat2 diagonal(std::int64_t n, std::int64_t x, std::int64_t y);

  // The standard generators of SL2(Z) reduced mod n: T = [1 1; 0 1],
  // S = [0 -1; 1 0], R = [0 -1; 1 -1]. Cusps are the T-orbits on a coset
  // space; cosets fixed by S and R are the elliptic points of orders 2 and 3.
  static Mat2 standard_t(std::int64_t n);
  static Mat2 standard_s(std::int64_t n);
  static Mat2 standard_r(std::int64_t n);

  std::int64_t det() const;
  bool has_unit_det() const;
  bool is_sl2() const;

  Mat2 operator*(const Mat2& rhs) const;
  /// Inverse; requires a unit determinant.
  Mat2 inverse() const;

  std::uint64_t packed() const;
  static Mat2 unpack(std::int64_t n, std::uint64_t key);

  friend bool operator==(const Mat2&, const Mat2&) = default;
};

}  // namespace modcurve
