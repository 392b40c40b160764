#include "modcurve/mat2.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "modcurve/arith.hpp"

namespace modcurve {

Mat2 Mat2::make(std::int64_t n, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  if (n < 1) throw std::invalid_argument("Mat2: modulus must be >= 1");
  if (n > kMaxModulus) throw std::invalid_argument("Mat2: modulus exceeds packed-key limit 65535");
  return Mat2{n, mod_reduce(a, n), mod_reduce(b, n), mod_reduce(c, n), mod_reduce(d, n)};
}

Mat2 Mat2::identity(std::int64_t n) { return make(n, 1, 0, 0, 1); }

Mat2 Mat2::minus_identity(std::int64_t n) { return make(n, -1, 0, 0, -1); }

Mat2 Mat2::diagonal(std::int64_t n, std::int64_t x, std::int64_t y) { return make(n, x, 0, 0, y); }

Mat2 Mat2::standard_t(std::int64_t n) { return make(n, 1, 1, 0, 1); }

Mat2 Mat2::standard_s(std::int64_t n) { return make(n, 0, -1, 1, 0); }

Mat2 Mat2::standard_r(std::int64_t n) { return make(n, 0, -1, 1, -1); }

std::int64_t Mat2::det() const { return mod_reduce(a * d - b * c, n); }

bool Mat2::has_unit_det() const { return std::gcd(det(), n) == 1; }

bool Mat2::is_sl2() const { return det() == 1 % n; }

Mat2 Mat2::operator*(const Mat2& rhs) const {
  if (n != rhs.n) throw std::invalid_argument("Mat2: mixed moduli in product");
  // Entries are < 65536, so products fit comfortably in 64 bits.
  return Mat2{n, mod_reduce(a * rhs.a + b * rhs.c, n), mod_reduce(a * rhs.b + b * rhs.d, n),
              mod_reduce(c * rhs.a + d * rhs.c, n), mod_reduce(c * rhs.b + d * rhs.d, n)};
}

Mat2 Mat2::inverse() const {
  std::int64_t dt = det();
  if (std::gcd(dt, n) != 1) throw std::invalid_argument("Mat2: matrix is not invertible");
  std::int64_t inv = mod_inverse(dt, n);
  return Mat2{n, mod_reduce(inv * d, n), mod_reduce(-inv * b, n), mod_reduce(-inv * c, n),
              mod_reduce(inv * a, n)};
}

std::uint64_t Mat2::packed() const {
  return (static_cast<std::uint64_t>(a) << 48) | (static_cast<std::uint64_t>(b) << 32) |
         (static_cast<std::uint64_t>(c) << 16) | static_cast<std::uint64_t>(d);
}

Mat2 Mat2::unpack(std::int64_t n, std::uint64_t key) {
  return Mat2{n, static_cast<std::int64_t>((key >> 48) & 0xffff),
              static_cast<std::int64_t>((key >> 32) & 0xffff),
              static_cast<std::int64_t>((key >> 16) & 0xffff),
              static_cast<std::int64_t>(key & 0xffff)};
}

}  // namespace modcurve
