// Word-size modular helpers shared by the library sources.
#pragma once

#include <cmath>
#include <cstdint>

namespace hlirred::detail {

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

/// Inverse of a modulo m; requires gcd(a, m) = 1.
inline std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

/// Smallest i >= 0 with modulus | m + i*d, assuming gcd(d, modulus) = 1.
inline std::uint64_t first_multiple_index(std::uint64_t m, std::uint64_t d, std::uint64_t modulus) {
  if (modulus == 1) return 0;
  const std::uint64_t neg_m = (modulus - m % modulus) % modulus;
  return mulmod(neg_m, invmod(d % modulus, modulus), modulus);
}

}  // namespace hlirred::detail
