#pragma once

// Second toroidal moments M_{a,b}(q) = (1/(q-1)) sum_chi L(1/2, chi^a) L(1/2, chi^b)
// and their variants.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tml/field.hpp"
#include "tml/lfun.hpp"

namespace tml {

struct MomentReport {
  std::uint64_t q = 0;
  std::int64_t a = 0, b = 0;
  cplx moment{};
  cplx even_part{};  // sum over even chi
  cplx odd_part{};   // sum over odd chi
  // moment - even_part - odd_part. Zero for the exact method; for the AFE
  // method it replaces the bracket by the exact product for the characters
  // with chi^a or chi^b trivial.
  cplx correction{};
  double main_term = 0;
  double abs_error = 0;
  std::uint64_t nonvanishing = 0;
  double seconds = 0;
  std::string method;
  std::string status = "ok";  // "ok" or the ErrorCode name for failed sweep entries
};

/// C = gamma/2 - pi/4 - (3/2) log 2 - (1/2) log pi.
double const_C();
/// The same constant as gamma + psi(1/4)/2 - (log pi)/2.
double const_C_digamma();

/// log q + 2C if a + b = 0; zeta((|a|+|b|) / (2 gcd(a,b))) if ab < 0; 1 if ab > 0.
double predict_main(std::int64_t a, std::int64_t b, std::uint64_t q);

/// Moment from a table of central values; even/odd split by the parity of j.
MomentReport moment_from_table(const FieldCtx& ctx, const LTable& table, std::int64_t a, std::int64_t b);

/// Error{ZeroExponent} when ab = 0.
MomentReport moment_exact(const FieldCtx& ctx, std::int64_t a, std::int64_t b, unsigned workers = 1);

/// Moment through N + P (even) and N' + i^{-beta} P' (odd) from one set of
/// smoothed sums, plus the exact values for characters with a trivial power.
MomentReport afe_moment(const FieldCtx& ctx, std::int64_t a, std::int64_t b, double x,
                        TestFunction g = TestFunction::Gauss);

/// (1/(q-1)) sum_chi chi(rho) |L(1/2, chi)|^2; Error{BadResidue} when q | rho.
cplx twisted_moment(const FieldCtx& ctx, const LTable& table, std::uint64_t rho);

/// (1/(q-1)) sum over chi = eta^a of |L(1/2, chi)|^2.
double power_subfamily_moment(const FieldCtx& ctx, const LTable& table, std::int64_t a);

struct RootTwist {
  std::optional<std::uint64_t> root;  // smallest root of f in [0, q); empty means NoRoot
  cplx value{};
};

/// f has integer coefficients, highest degree first, degree >= 2. Throws
/// Error{ReducibleHint} when f has a rational root and
/// Error{PreconditionViolated} for degree < 2.
RootTwist root_twist(const FieldCtx& ctx, const LTable& table, std::span<const std::int64_t> f);

/// Rational roots of an integer polynomial (highest degree first).
std::vector<std::pair<std::int64_t, std::int64_t>> rational_roots(std::span<const std::int64_t> f);

struct Nonvanishing {
  std::uint64_t count = 0;
  std::uint64_t total = 0;
  double fraction = 0;
  std::vector<std::uint64_t> flagged;  // j with |product| in [1e-10, 1e-6]
};

/// Characters with |L(1/2, chi^a) L(1/2, chi^b)| > 1e-8 max(1, |L(1/2, chi^a)|, |L(1/2, chi^b)|).
Nonvanishing nonvanishing_count(const FieldCtx& ctx, const LTable& table, std::int64_t a, std::int64_t b);

/// sum_{m >= 1, q does not divide m} m^{-1} V(m^2 / X) with the even weight;
/// approximately (1/2) log X + C for X much smaller than q^2.
double diagonal_contribution(std::uint64_t q, double x, TestFunction g = TestFunction::Gauss);

enum class Method { Exact, Afe };

struct SweepOptions {
  Method method = Method::Exact;
  unsigned workers = 1;
  double afe_x_over_q = 1.0;  // X = afe_x_over_q * q
};

/// One report per entry of qs, in input order. Entries that fail carry the
/// error in status and the remaining entries are still computed.
std::vector<MomentReport> sweep(std::int64_t a, std::int64_t b, std::span<const std::uint64_t> qs,
                                const SweepOptions& opt = {});

/// Least-squares slope of log abs_error against log q over the ok entries
/// with a nonzero error; NaN with fewer than two points.
double fitted_slope(std::span<const MomentReport> reports);

}  // namespace tml
