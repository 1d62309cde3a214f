#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tml/field.hpp"
#include "tml/torus.hpp"

namespace tml {

/// Dirichlet character chi_j mod q, chi_j(g^k) = e(jk/(q-1)).
/// Holds a pointer to its FieldCtx, which must outlive it.
class Character {
 public:
  Character(const FieldCtx& ctx, std::int64_t j)
      : ctx_(&ctx), j_(arith::mod(j, ctx.order())) {}

  const FieldCtx& ctx() const noexcept { return *ctx_; }
  std::uint64_t index() const noexcept { return j_; }
  bool is_trivial() const noexcept { return j_ == 0; }

  /// chi(x); zero when q | x.
  cplx eval(std::uint64_t x) const;

  /// t(chi) = (1 - chi(-1))/2, which is j mod 2.
  int parity() const noexcept { return static_cast<int>(j_ & 1U); }

  Character power(std::int64_t a) const;
  Character conj() const { return power(-1); }

  friend bool operator==(const Character& x, const Character& y) {
    return x.ctx_ == y.ctx_ && x.j_ == y.j_;
  }

 private:
  const FieldCtx* ctx_;
  std::uint64_t j_;
};

/// out[j] = sum_k e(jk/(q-1)) * by_dlog[k], i.e. sum_x chi_j(x) f(x) when
/// by_dlog[k] = f(g^k). One length-(q-1) transform.
std::vector<cplx> character_transform(const FieldCtx& ctx, std::span<const cplx> by_dlog);

/// H_A^perp(F_q): all index tuples (j_1..j_k) with prod chi_{j_i}(x_i) = 1 on
/// every point of H_A(F_q). Brute filter; throws Error{TooLarge} when
/// (q-1)^k * |H_A| exceeds cap.
std::vector<std::vector<std::uint64_t>> subgroup_perp(const FieldCtx& ctx, const TorusMatrix& a,
                                                      std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace tml
