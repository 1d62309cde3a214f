#pragma once

// Integer helpers shared by the prime-field code. All residues are taken
// in [0, m) and products go through 128-bit intermediates.

#include <cstdint>
#include <numeric>
#include <vector>

namespace tml::arith {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

// Least non-negative residue of x mod m (m > 0).
inline u64 mod(i64 x, u64 m) {
  const i64 r = x % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

inline u64 gcd(i64 a, i64 b) {
  return static_cast<u64>(std::gcd(a < 0 ? -a : a, b < 0 ? -b : b));
}

struct Bezout {
  i64 g;  // gcd(a, b) >= 0
  i64 x;  // a*x + b*y = g
  i64 y;
};

Bezout ext_gcd(i64 a, i64 b);

// Inverse of a mod m; requires gcd(a, m) = 1.
u64 inv_mod(i64 a, u64 m);

// All x in [0, m) with a*x = c (mod m). Empty when gcd(a, m) does not divide c.
// When a = 0 (mod m) and c = 0, returns every residue.
std::vector<u64> solve_linear(i64 a, i64 c, u64 m);

// Deterministic Miller-Rabin, valid for every 64-bit input.
bool is_prime(u64 n);

// Distinct prime factors by trial division.
std::vector<u64> prime_factors(u64 n);

}  // namespace tml::arith
