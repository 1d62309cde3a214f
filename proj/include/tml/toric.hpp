#pragma once

// Integer points of boxes whose reduction mod q lies in a coset u H_A(F_q).

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tml/field.hpp"
#include "tml/torus.hpp"

namespace tml {

/// B = I_1 x ... x I_k with I_j = {lo_j, ..., hi_j}.
class IntBox {
 public:
  /// Throws Error{ParseError} when empty or when some lo_j > hi_j.
  explicit IntBox(std::vector<std::pair<std::int64_t, std::int64_t>> intervals);

  /// "lo..hi,lo..hi,..."
  static IntBox parse(std::string_view text);

  std::size_t dim() const noexcept { return iv_.size(); }
  std::int64_t lo(std::size_t j) const { return iv_[j].first; }
  std::int64_t hi(std::size_t j) const { return iv_[j].second; }
  std::uint64_t length(std::size_t j) const { return static_cast<std::uint64_t>(iv_[j].second - iv_[j].first + 1); }
  const std::vector<std::pair<std::int64_t, std::int64_t>>& intervals() const noexcept { return iv_; }

  /// |B| (saturates at UINT64_MAX).
  std::uint64_t size() const;
  /// |dB|, the points lying on some face {lo_j} or {hi_j}.
  std::uint64_t boundary_size() const;

  std::string to_string() const;

 private:
  std::vector<std::pair<std::int64_t, std::int64_t>> iv_;
};

struct CountResult {
  std::uint64_t count = 0;
  double normalized = 0.0;  // count / sqrt|B|
  std::string method;       // "brute" | "lattice"
};

/// Number of integers in [lo, hi] congruent to r mod m.
std::uint64_t count_in_class(std::int64_t lo, std::int64_t hi, std::uint64_t r, std::uint64_t m);

/// M_A(u, B; q): points x of B with x mod q in u H_A(F_q). Points having a
/// coordinate divisible by q are never counted. All coordinates but the
/// longest are enumerated; the longest is solved by a linear congruence on
/// discrete logarithms and counted per residue class. Throws Error{TooLarge}
/// if the enumeration exceeds cap and Error{BadResidue} if some u_j = 0.
CountResult count_brute(const FieldCtx& ctx, const TorusMatrix& a, std::span<const std::uint64_t> u, const IntBox& box,
                        std::uint64_t cap = kDefaultEnumerationCap);

enum class Norm { Euclidean, Sup };

/// Minimum of {(m, n) in Z^2 : m = alpha n (mod q)} via Lagrange-Gauss
/// reduction of {(alpha, 1), (q, 0)}.
double lattice_min_2d(std::uint64_t q, std::uint64_t alpha, Norm norm = Norm::Euclidean);

/// Lagrange-Gauss reduced basis of the same lattice, shortest vector first.
std::pair<std::pair<std::int64_t, std::int64_t>, std::pair<std::int64_t, std::int64_t>> reduced_basis_2d(
    std::uint64_t q, std::uint64_t alpha);

/// Exact number of (m, n) in I x J with m = alpha n (mod q).
std::uint64_t lattice_count_2d(std::uint64_t q, std::uint64_t alpha, std::int64_t m_lo, std::int64_t m_hi,
                               std::int64_t n_lo, std::int64_t n_hi);

struct LinearCount {
  std::uint64_t count = 0;        // all x in B with u_i x_i = u_j x_j (mod q)
  std::uint64_t count_units = 0;  // those with no coordinate divisible by q
  double lambda1 = 0.0;           // minimum of the k-dimensional lattice
  double bound = 0.0;             // |B|/q + (|dB|/lambda1 + 1)^{k-1}
};

/// Congruence u_i x_i = u_j x_j (mod q) over B (indices 0-based). The pair
/// (x_i, x_j) is counted on the 2D lattice y_i = (u_j/u_i) y_j via its
/// reduced basis; the other coordinates are free.
LinearCount count_lattice_linear(const FieldCtx& ctx, std::size_t i, std::size_t j, std::span<const std::uint64_t> u,
                                 const IntBox& box);

/// Weight on (0, inf) for systematic_count; |fn(y)| is negligible beyond support_end.
struct Weight {
  std::function<double(double)> fn;
  double support_end;
};

/// N^syst(X) = 1/2 sum_{r >= 1} r^{-e/2} V(r^e / X) with e = (a + bneg)/gcd(a, bneg),
/// the contribution of the systematic solutions (m, n) = (r^{bneg/d}, r^{a/d})
/// of m^a n^{-bneg} = 1. Throws Error{DegenerateExponent} for a = bneg and
/// Error{PreconditionViolated} unless a, bneg >= 1 and X > 0.
double systematic_count(std::int64_t a, std::int64_t bneg, double x, const Weight& v);

struct PierceBound {
  double value = 0.0;
  bool applicable = false;  // M <= q^{(k+1)/(2k)}/2 and N <= q/4
};

/// M^{k/(k+1)} N^{1/(2k)} (log q)^{1/(2k)}, without implicit constant.
PierceBound pierce_bound(std::uint64_t m, std::uint64_t n, std::uint64_t q, int k);

}  // namespace tml
