#include "tml/arith.hpp"

#include <array>

namespace tml::arith {

Bezout ext_gcd(i64 a, i64 b) {
  i64 old_r = a, r = b;
  i64 old_s = 1, s = 0;
  i64 old_t = 0, t = 1;
  while (r != 0) {
    const i64 quot = old_r / r;
    i64 tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
    tmp = old_t - quot * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

u64 inv_mod(i64 a, u64 m) {
  const Bezout bz = ext_gcd(static_cast<i64>(mod(a, m)), static_cast<i64>(m));
  return mod(bz.x, m);
}

std::vector<u64> solve_linear(i64 a, i64 c, u64 m) {
  const u64 ar = mod(a, m);
  const u64 cr = mod(c, m);
  std::vector<u64> out;
  if (ar == 0) {
    if (cr != 0) return out;
    out.resize(m);
    std::iota(out.begin(), out.end(), u64{0});
    return out;
  }
  const u64 g = gcd(static_cast<i64>(ar), static_cast<i64>(m));
  if (cr % g != 0) return out;
  const u64 mg = m / g;
  const u64 x0 = mulmod(cr / g, inv_mod(static_cast<i64>(ar / g), mg), mg);
  out.reserve(g);
  for (u64 t = 0; t < g; ++t) out.push_back(x0 + t * mg);
  return out;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  constexpr std::array<u64, 12> witnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : witnesses) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (u64 a : witnesses) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace tml::arith
