#pragma once

// Gauss sums and exponential sums over tori:
//   eps(chi)            = q^{-1/2} sum_x chi(x) e(x/q)
//   T_A(u;q)            = q^{-(k - rank A)/2} sum_{x in H_A} e(x.u/q)
//   T~_{a,b}(u;q)       = q^{-1/2} sum_{x^a y^b = u} e((x+y)/q)
//   T_{a,b}(u,v;q)      = T~_{a,b}(u^a v^b;q)
//
// Normalization follows the elementary definition above (no sheaf-theoretic
// sign). Tables indexed "by residue" have size q with entry 0 unused.

#include <cstdint>
#include <span>
#include <vector>

#include "tml/chars.hpp"
#include "tml/field.hpp"
#include "tml/torus.hpp"

namespace tml {

cplx gauss_sum(const Character& chi);

/// table[j] = eps(chi_j) for j = 0..q-2, via one length-(q-1) transform.
std::vector<cplx> gauss_all(const FieldCtx& ctx);

/// Direct evaluation through the parametrization of x^a y^b = u by
/// F_q^x x mu_gcd(a,b); O(q * gcd(a,b,q-1)). Throws Error{BadResidue} on u = 0
/// and Error{ZeroExponent} when a or b is zero.
cplx t_tilde(const FieldCtx& ctx, std::int64_t a, std::int64_t b, std::uint64_t u);

/// Same sum by enumerating x and solving y^b = u x^{-a}; O(q * gcd(b, q-1)).
cplx t_tilde_enumerate(const FieldCtx& ctx, std::int64_t a, std::int64_t b, std::uint64_t u);

/// T~_{a,b}(u) for every u, from the Gauss-sum relation
///   T~(u) = sqrt(q)/(q-1) sum_chi eps(chi^a) eps(chi^b) conj(chi(u)).
/// Indexed by residue.
std::vector<cplx> t_tilde_all(const FieldCtx& ctx, std::int64_t a, std::int64_t b);
std::vector<cplx> t_tilde_all(const FieldCtx& ctx, std::int64_t a, std::int64_t b,
                              std::span<const cplx> gauss_table);

/// Closed form for a + b = 0: sqrt(q)[u = (-1)^a] - gcd(a, q-1)/sqrt(q) [u in (F_q^x)^a].
cplx t_tilde_antidiagonal(const FieldCtx& ctx, std::int64_t a, std::uint64_t u);

cplx t_ab(const FieldCtx& ctx, std::int64_t a, std::int64_t b, std::uint64_t u, std::uint64_t v);

/// T_A(u;q) for u in F_q^k (zero coordinates allowed).
cplx t_general(const FieldCtx& ctx, const TorusMatrix& a, std::span<const std::uint64_t> u,
               std::uint64_t cap = kDefaultEnumerationCap);

/// q^{-k} sum_{u in F_q^k} |T_A(u;q)|^2 by brute force over u.
double mean_square(const FieldCtx& ctx, const TorusMatrix& a, std::uint64_t cap = kDefaultEnumerationCap);

/// |H_A(F_q)| / q^{k - rank A}.
double mean_square_expected(const FieldCtx& ctx, const TorusMatrix& a);

struct DualityPair {
  cplx lhs;  // (1/|H^perp|) sum_{chi in H^perp} eps(chi) conj(chi(u))
  cplx rhs;  // q^{-rank/2} T_A(u;q)
};

/// Both sides of the duality between H_A^perp averages of Gauss sums and T_A.
/// u must have unit coordinates.
DualityPair duality_check(const FieldCtx& ctx, const TorusMatrix& a, std::span<const std::uint64_t> u,
                          std::uint64_t cap = kDefaultEnumerationCap);

struct WeilReport {
  double max_abs = 0.0;
  std::uint64_t argmax = 0;
  double bound = 0.0;       // |a|+|b| for ab > 0, max(|a|,|b|) for ab < 0
  bool applicable = false;  // a+b != 0 and q >= max(|a|,|b|)^2
  bool ok = false;          // applicable and max_abs <= bound + 1e-8
};

/// Scans all u in F_q^x. With strict = true an inapplicable pair throws
/// Error{PreconditionViolated}; otherwise the report is flagged.
WeilReport weil_report(const FieldCtx& ctx, std::int64_t a, std::int64_t b, bool strict = false);

}  // namespace tml
