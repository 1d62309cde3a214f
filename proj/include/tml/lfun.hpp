#pragma once

// Central values L(1/2, chi) and the approximate functional equation for
// L(1/2, chi^a) L(1/2, chi^b):
//
//   L L = sum_{m,n} chi(m^a n^b) (mn)^{-1/2} V(mn/X)
//       + eps(chi^a) eps(chi^b) i^{-t(chi^a)-t(chi^b)} sum_{m,n} conj chi(m^a n^b) (mn)^{-1/2} V(mn/Y)
//
// with XY = q^2 and V(y) = (1/2 pi i) int_(3) y^{-u} G(u) gamma(1/2+u)/gamma(1/2) du/u,
// gamma(s) = pi^{-s} Gamma((s+t_a)/2) Gamma((s+t_b)/2).

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tml/chars.hpp"
#include "tml/field.hpp"

namespace tml {

/// values[j] = L(1/2, chi_j).
struct LTable {
  std::vector<cplx> values;
  std::string method;  // "hurwitz_batch" | "direct"
};

/// L(1/2, chi) = q^{-1/2} sum_{a=1}^{q-1} chi(a) zeta(1/2, a/q). For the
/// trivial character this is zeta(1/2)(1 - q^{-1/2}).
cplx l_central(const Character& chi);

/// All central values from one length-(q-1) transform of zeta(1/2, g^k/q);
/// the Hurwitz values are split over `workers` threads.
LTable l_central_all(const FieldCtx& ctx, unsigned workers = 1);

/// gamma_{a,b}(s); Error{PoleError} when (s+t_a)/2 or (s+t_b)/2 is a pole of Gamma.
cplx gamma_factor(cplx s, int ta, int tb);

enum class TestFunction {
  Gauss,   // G(u) = exp(u^2)
  Gauss2,  // G(u) = exp(2 u^2)
};

struct Quadrature {
  double t_max = 12.0;
  double h = 0.05;
};

/// The weight V for one parity pair. Construction precomputes the
/// y-independent part of the integrand on the quadrature grid and a
/// piecewise Chebyshev interpolant in log y; evaluation through operator()
/// costs a few dozen flops.
///
/// For y >= 1 the integral is taken on Re u = 3 (Re u = 3/2 for Gauss2, where
/// |G| = e^{18} on Re u = 3 costs nine digits). For y < 1 it is taken on
/// Re u = -1/4 after moving past the pole at u = 0 (residue 1); the line
/// Re u = 3 loses all precision to cancellation for small y.
class AfeWeight {
 public:
  AfeWeight(int ta, int tb, TestFunction g = TestFunction::Gauss, Quadrature quad = {});

  int ta() const noexcept { return ta_; }
  int tb() const noexcept { return tb_; }
  TestFunction test_function() const noexcept { return g_; }

  /// Trapezoid quadrature on the line Re u = c (c > 0, or -1/2 < c < 0 with
  /// the residue added). Throws Error{QuadratureFailure} when the integrand
  /// at |Im u| = t_max is not negligible.
  double on_line(double y, double c) const;

  /// Quadrature with the contour chosen from y as described above.
  double direct(double y) const;

  /// Interpolated V(y); falls back to direct() outside the tabulated range.
  double operator()(double y) const;

  /// Cutoff y0 such that the tail of sum_k d(k) k^{-1/2} |V(k/Z)| over
  /// k > Z y0 is at most tol (estimated by the integral over y > y0).
  double tail_cutoff(double z, double tol) const;

 private:
  struct Line {
    double c;
    std::vector<double> t;
    std::vector<cplx> f;  // weighted G(u) R(u)/u at u = c + i t
  };
  Line make_line(double c) const;
  double eval_line(const Line& line, double y) const;

  int ta_, tb_;
  TestFunction g_;
  Quadrature quad_;
  Line right_, left_;

  // Chebyshev pieces on [log_lo_, log_hi_], each of width piece_.
  double log_lo_ = 0, log_hi_ = 0, piece_ = 0;
  std::vector<std::vector<double>> cheb_;
};

/// V(y) for parities (ta, tb), direct quadrature.
double v_weight(double y, int ta, int tb, TestFunction g = TestFunction::Gauss);

struct AfeParams {
  std::int64_t a = 1;
  std::int64_t b = 1;
  double x = 0;  // X; Y = q^2 / X
  double y = 0;
  TestFunction g = TestFunction::Gauss;
  Quadrature quad{};
  double tail_tol = 1e-10;  // absolute bound on the dropped tail of each smoothed sum
};

/// Parameters with Y = q^2 / X; Error{ZeroExponent} for ab = 0, Error{DomainError} for X <= 0.
AfeParams make_afe_params(const FieldCtx& ctx, std::int64_t a, std::int64_t b, double x,
                          TestFunction g = TestFunction::Gauss);

/// w[k] = k^{-1/2} V(k/Z) for 1 <= k <= K, with K the truncation point for Z.
std::vector<double> afe_weight_table(const AfeWeight& v, double z, double tail_tol);

/// by_exponent[e] = sum of w[mn] over pairs m, n >= 1 with mn < w.size(),
/// q not dividing mn, and a dlog m + b dlog n = e (mod q-1). One pass in
/// O(K log K).
std::vector<double> pair_sums(const FieldCtx& ctx, std::int64_t a, std::int64_t b, std::span<const double> w);

/// The four bucketed sums needed by the AFE for one (a, b, X, Y), with the
/// even weight V_{0,0} and the odd weight W = V_{a mod 2, b mod 2}.
struct AfeSums {
  std::vector<double> even_x, even_y, odd_x, odd_y;
  int beta = 0;  // (a mod 2) + (b mod 2)
};
AfeSums afe_sums(const FieldCtx& ctx, const AfeParams& p);

/// Right-hand side of the AFE for every character (the functional-equation
/// bracket, also for characters with chi^a or chi^b trivial).
std::vector<cplx> afe_rhs_all(const FieldCtx& ctx, const AfeParams& p, std::span<const cplx> eps_table);
std::vector<cplx> afe_rhs_all(const FieldCtx& ctx, const AfeParams& p, std::span<const cplx> eps_table,
                              const AfeSums& sums);

/// AFE bracket for one character; same formula as afe_rhs_all.
cplx afe_rhs(const Character& chi, const AfeParams& p, std::span<const cplx> eps_table);

/// AFE for one character; Error{TrivialPower} when chi^a or chi^b is trivial.
cplx afe_eval(const Character& chi, const AfeParams& p, std::span<const cplx> eps_table);

enum class Parity { Even, Odd };

/// N_{a,b}(X) = 1/2 sum_{(m^a n^b)^2 = 1} (mn)^{-1/2} V(mn/X) (even) and
/// N'_{a,b}(X) = 1/2 sum_{m^a n^b = 1} - 1/2 sum_{m^a n^b = -1} with weight W (odd).
double n_term(const FieldCtx& ctx, std::int64_t a, std::int64_t b, double x, Parity parity,
              TestFunction g = TestFunction::Gauss);
double n_term(const FieldCtx& ctx, std::span<const double> sums_x, Parity parity);

/// P_{a,b}(Y) = (1/2 sqrt q) sum (mn)^{-1/2} T~_{2a,2b}(m^{2a} n^{2b}) V(mn/Y) (even) and
/// P'_{a,b}(Y) with T~_{a,b}(u) - T~_{a,b}(-u) and weight W (odd). The odd
/// variant excludes the factor i^{-beta}.
cplx p_term(const FieldCtx& ctx, std::int64_t a, std::int64_t b, double y, Parity parity,
            TestFunction g = TestFunction::Gauss);
cplx p_term(const FieldCtx& ctx, std::int64_t a, std::int64_t b, std::span<const double> sums_y, Parity parity,
            std::span<const cplx> eps_table);

}  // namespace tml
