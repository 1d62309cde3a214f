#include "tml/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tml/error.hpp"

namespace tml {

namespace {

// exp(2 pi i num/den) with the fraction reduced to (-1/2, 1/2] first.
cplx unit_root(std::uint64_t num, std::uint64_t den) {
  num %= den;
  double frac = static_cast<double>(num) / static_cast<double>(den);
  if (2 * num > den) frac = -static_cast<double>(den - num) / static_cast<double>(den);
  return std::polar(1.0, 2.0 * std::numbers::pi * frac);
}

}  // namespace

std::uint64_t smallest_primitive_root(std::uint64_t q) {
  const std::uint64_t n = q - 1;
  const auto factors = arith::prime_factors(n);
  for (std::uint64_t g = 2; g < q; ++g) {
    bool ok = true;
    for (std::uint64_t p : factors) {
      if (arith::powmod(g, n / p, q) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 1;  // q = 2
}

FieldCtx::FieldCtx(std::uint64_t q) : q_(q) {
  if (q < 3) throw Error(ErrorCode::TooSmall, "modulus must be >= 3, got " + std::to_string(q));
  if (!arith::is_prime(q)) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not prime");
  if (q > kMaxModulus) throw Error(ErrorCode::TooLarge, "modulus exceeds table capacity");

  g_ = smallest_primitive_root(q);
  const std::uint64_t n = q - 1;
  dlog_.assign(q, 0);
  gpow_.resize(n);
  std::uint64_t x = 1;
  for (std::uint64_t k = 0; k < n; ++k) {
    gpow_[k] = static_cast<std::uint32_t>(x);
    dlog_[x] = static_cast<std::uint32_t>(k);
    x = x * g_ % q;
  }

  add_roots_.resize(q);
  for (std::uint64_t r = 0; r < q; ++r) add_roots_[r] = unit_root(r, q);
  mul_roots_.resize(n);
  for (std::uint64_t k = 0; k < n; ++k) mul_roots_[k] = unit_root(k, n);
}

std::uint64_t FieldCtx::pow(std::uint64_t x, std::int64_t e) const {
  if (!is_unit(x)) {
    if (e <= 0) throw Error(ErrorCode::BadResidue, "non-positive power of zero");
    return 0;
  }
  const auto k = static_cast<unsigned __int128>(dlog(x)) * arith::mod(e, q_ - 1);
  return gpow_[static_cast<std::uint64_t>(k % (q_ - 1))];
}

FieldCtx build_ctx(std::uint64_t q) { return FieldCtx(q); }

std::vector<std::uint64_t> roots_of_unity(const FieldCtx& ctx, std::int64_t d) {
  if (d < 1) throw Error(ErrorCode::PreconditionViolated, "d must be >= 1");
  const std::uint64_t n = ctx.order();
  const std::uint64_t e = arith::gcd(d, static_cast<std::int64_t>(n));
  std::vector<std::uint64_t> out;
  out.reserve(e);
  for (std::uint64_t k = 0; k < e; ++k) out.push_back(ctx.gpow(static_cast<std::int64_t>(k * (n / e))));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> power_residues(const FieldCtx& ctx, std::int64_t a) {
  if (a == 0) throw Error(ErrorCode::ZeroExponent, "exponent must be non-zero");
  const std::uint64_t n = ctx.order();
  const std::uint64_t e = arith::gcd(a, static_cast<std::int64_t>(n));
  std::vector<std::uint64_t> out;
  out.reserve(n / e);
  for (std::uint64_t k = 0; k < n; k += e) out.push_back(ctx.gpow(static_cast<std::int64_t>(k)));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_power_residue(const FieldCtx& ctx, std::uint64_t x, std::int64_t a) {
  if (a == 0) throw Error(ErrorCode::ZeroExponent, "exponent must be non-zero");
  if (!ctx.is_unit(x)) return false;
  const std::uint64_t e = arith::gcd(a, static_cast<std::int64_t>(ctx.order()));
  return ctx.dlog(x) % e == 0;
}

std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = lo; p <= hi; ++p) {
    if (arith::is_prime(p)) out.push_back(p);
    if (p == UINT64_MAX) break;
  }
  return out;
}

}  // namespace tml
