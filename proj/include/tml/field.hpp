#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "tml/arith.hpp"

namespace tml {

using cplx = std::complex<double>;

/// Prime-field context for F_q^x: a primitive root g together with dense
/// discrete-log and power tables, plus the additive (e(x/q)) and
/// multiplicative (e(k/(q-1))) root-of-unity tables used by the character
/// and exponential-sum code.
///
/// Immutable after construction; share it read-only between threads.
class FieldCtx {
 public:
  static constexpr std::uint64_t kMaxModulus = 0xFFFFFFFFULL;

  /// Throws Error{TooSmall} for q < 3, Error{NotPrime} for composite q and
  /// Error{TooLarge} when the tables would not fit 32-bit entries.
  explicit FieldCtx(std::uint64_t q);

  std::uint64_t q() const noexcept { return q_; }
  /// Order of F_q^x, i.e. q - 1.
  std::uint64_t order() const noexcept { return q_ - 1; }
  std::uint64_t generator() const noexcept { return g_; }

  /// k in [0, q-2] with g^k = x; x must be a unit mod q.
  std::uint64_t dlog(std::uint64_t x) const { return dlog_[x % q_]; }
  /// g^k mod q for any integer k.
  std::uint64_t gpow(std::int64_t k) const { return gpow_[arith::mod(k, q_ - 1)]; }

  /// x^e mod q for a unit x and any integer e (negative means inverse).
  std::uint64_t pow(std::uint64_t x, std::int64_t e) const;
  std::uint64_t inverse(std::uint64_t x) const { return pow(x, -1); }

  /// e(r/q) = exp(2 pi i r / q).
  const cplx& e_q(std::uint64_t r) const { return add_roots_[r % q_]; }
  /// e(k/(q-1)).
  const cplx& e_order(std::int64_t k) const { return mul_roots_[arith::mod(k, q_ - 1)]; }

  bool is_unit(std::uint64_t x) const noexcept { return x % q_ != 0; }

 private:
  std::uint64_t q_;
  std::uint64_t g_;
  std::vector<std::uint32_t> dlog_;
  std::vector<std::uint32_t> gpow_;
  std::vector<cplx> add_roots_;
  std::vector<cplx> mul_roots_;
};

/// Builds the context with the smallest primitive root.
FieldCtx build_ctx(std::uint64_t q);

/// Smallest primitive root of a prime q (factoring q-1 by trial division).
std::uint64_t smallest_primitive_root(std::uint64_t q);

/// mu_d(F_q): the gcd(d, q-1) solutions of x^d = 1, sorted ascending.
std::vector<std::uint64_t> roots_of_unity(const FieldCtx& ctx, std::int64_t d);

/// (F_q^x)^a, sorted ascending. Throws Error{ZeroExponent} for a = 0.
std::vector<std::uint64_t> power_residues(const FieldCtx& ctx, std::int64_t a);

/// Membership test for (F_q^x)^a without materializing the set.
bool is_power_residue(const FieldCtx& ctx, std::uint64_t x, std::int64_t a);

/// Primes p with lo <= p <= hi, ascending.
std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi);

}  // namespace tml
