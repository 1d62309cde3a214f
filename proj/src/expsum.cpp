#include "tml/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "tml/dft.hpp"
#include "tml/error.hpp"

namespace tml {

namespace {

using arith::u64;
using arith::i64;

void require_exponents(i64 a, i64 b) {
  if (a == 0 || b == 0) throw Error(ErrorCode::ZeroExponent, "exponents must be nonzero");
}

u64 require_unit(const FieldCtx& ctx, u64 u) {
  u %= ctx.q();
  if (u == 0) throw Error(ErrorCode::BadResidue, "residue must be a unit mod q");
  return u;
}

u64 addmod(u64 x, u64 y, u64 n) {
  const u64 s = x + y;
  return s >= n ? s - n : s;
}

}  // namespace

cplx gauss_sum(const Character& chi) {
  const FieldCtx& ctx = chi.ctx();
  cplx acc = 0;
  for (u64 x = 1; x < ctx.q(); ++x) acc += chi.eval(x) * ctx.e_q(x);
  return acc / std::sqrt(static_cast<double>(ctx.q()));
}

std::vector<cplx> gauss_all(const FieldCtx& ctx) {
  const u64 n = ctx.order();
  std::vector<cplx> z(n);
  for (u64 k = 0; k < n; ++k) z[k] = ctx.e_q(ctx.gpow(static_cast<i64>(k)));
  auto out = character_transform(ctx, z);
  const double s = 1.0 / std::sqrt(static_cast<double>(ctx.q()));
  for (auto& v : out) v *= s;
  return out;
}

cplx t_tilde(const FieldCtx& ctx, i64 a, i64 b, u64 u) {
  require_exponents(a, b);
  u = require_unit(ctx, u);
  const u64 n = ctx.order();

  // beta*a + alpha*b = delta; a base point is (g^{beta s}, g^{alpha s}) with
  // delta*s = dlog u. The fibre over u is that point times
  // { (rho^beta t^{b/delta}, rho^alpha t^{-a/delta}) : rho in mu_delta, t in F_q^x }.
  const auto bz = arith::ext_gcd(a, b);
  const i64 delta = bz.g;
  const i64 beta = bz.x;
  const i64 alpha = bz.y;

  const auto sols = arith::solve_linear(delta, static_cast<i64>(ctx.dlog(u)), n);
  if (sols.empty()) return 0.0;
  const u64 s = sols.front();
  const u64 ex0 = arith::mulmod(arith::mod(beta, n), s, n);
  const u64 ey0 = arith::mulmod(arith::mod(alpha, n), s, n);

  const u64 e = arith::gcd(delta, static_cast<i64>(n));
  const u64 step_x = arith::mod(b / delta, n);
  const u64 step_y = arith::mod(-(a / delta), n);

  cplx acc = 0;
  for (u64 r = 0; r < e; ++r) {
    const u64 rho = r * (n / e);
    u64 ex = addmod(ex0, arith::mulmod(arith::mod(beta, n), rho, n), n);
    u64 ey = addmod(ey0, arith::mulmod(arith::mod(alpha, n), rho, n), n);
    for (u64 t = 0; t < n; ++t) {
      acc += ctx.e_q(ctx.gpow(static_cast<i64>(ex)) + ctx.gpow(static_cast<i64>(ey)));
      ex = addmod(ex, step_x, n);
      ey = addmod(ey, step_y, n);
    }
  }
  return acc / std::sqrt(static_cast<double>(ctx.q()));
}

cplx t_tilde_enumerate(const FieldCtx& ctx, i64 a, i64 b, u64 u) {
  require_exponents(a, b);
  u = require_unit(ctx, u);
  const u64 n = ctx.order();
  const u64 d = arith::gcd(b, static_cast<i64>(n));
  const u64 np = n / d;
  const u64 binv = np == 1 ? 0 : arith::inv_mod(b / static_cast<i64>(d), np);
  const u64 c = ctx.dlog(u);
  const u64 am = arith::mod(a, n);

  cplx acc = 0;
  for (u64 x = 1; x < ctx.q(); ++x) {
    // b * ey = c - a * dlog x (mod n)
    const u64 rhs = (c + n - arith::mulmod(am, ctx.dlog(x), n)) % n;
    if (rhs % d != 0) continue;
    const u64 ey0 = arith::mulmod(rhs / d, binv, np);
    for (u64 t = 0; t < d; ++t) acc += ctx.e_q(x + ctx.gpow(static_cast<i64>(ey0 + t * np)));
  }
  return acc / std::sqrt(static_cast<double>(ctx.q()));
}

std::vector<cplx> t_tilde_all(const FieldCtx& ctx, i64 a, i64 b) {
  const auto g = gauss_all(ctx);
  return t_tilde_all(ctx, a, b, g);
}

std::vector<cplx> t_tilde_all(const FieldCtx& ctx, i64 a, i64 b, std::span<const cplx> gauss_table) {
  require_exponents(a, b);
  const u64 n = ctx.order();
  if (gauss_table.size() != n) throw Error(ErrorCode::PreconditionViolated, "Gauss table has wrong length");
  const u64 am = arith::mod(a, n);
  const u64 bm = arith::mod(b, n);
  std::vector<cplx> c(n);
  for (u64 j = 0; j < n; ++j) c[j] = gauss_table[arith::mulmod(am, j, n)] * gauss_table[arith::mulmod(bm, j, n)];

  // sum_j c_j conj(chi_j(g^m)) = sum_j c_j e(-jm/n)
  const auto f = dft::transform(c, -1);
  const double scale = std::sqrt(static_cast<double>(ctx.q())) / static_cast<double>(n);
  std::vector<cplx> out(ctx.q(), 0.0);
  for (u64 m = 0; m < n; ++m) out[ctx.gpow(static_cast<i64>(m))] = f[m] * scale;
  return out;
}

cplx t_tilde_antidiagonal(const FieldCtx& ctx, i64 a, u64 u) {
  if (a == 0) throw Error(ErrorCode::ZeroExponent, "exponent must be nonzero");
  u = require_unit(ctx, u);
  const double sq = std::sqrt(static_cast<double>(ctx.q()));
  const u64 sign = (a % 2 == 0) ? 1 : ctx.q() - 1;
  double v = 0;
  if (u == sign) v += sq;
  if (is_power_residue(ctx, u, a)) v -= static_cast<double>(arith::gcd(a, static_cast<i64>(ctx.order()))) / sq;
  return v;
}

cplx t_ab(const FieldCtx& ctx, i64 a, i64 b, u64 u, u64 v) {
  u = require_unit(ctx, u);
  v = require_unit(ctx, v);
  return t_tilde(ctx, a, b, arith::mulmod(ctx.pow(u, a), ctx.pow(v, b), ctx.q()));
}

cplx t_general(const FieldCtx& ctx, const TorusMatrix& a, std::span<const u64> u, u64 cap) {
  if (u.size() != a.cols()) throw Error(ErrorCode::PreconditionViolated, "u has wrong length");
  const u64 q = ctx.q();
  const std::size_t k = a.cols();
  cplx acc = 0;
  for_each_subgroup_exponent(ctx, a, cap, [&](std::span<const u64> e) {
    u64 phase = 0;
    for (std::size_t j = 0; j < k; ++j) phase = (phase + arith::mulmod(ctx.gpow(static_cast<i64>(e[j])), u[j] % q, q)) % q;
    acc += ctx.e_q(phase);
  });
  const double dim = static_cast<double>(k) - static_cast<double>(a.rank());
  return acc * std::pow(static_cast<double>(q), -dim / 2.0);
}

double mean_square(const FieldCtx& ctx, const TorusMatrix& a, u64 cap) {
  const u64 q = ctx.q();
  const std::size_t k = a.cols();
  const auto pts = subgroup_points(ctx, a, cap);

  long double work = static_cast<long double>(pts.size()) * k;
  for (std::size_t j = 0; j < k; ++j) work *= static_cast<long double>(q);
  if (work > static_cast<long double>(cap)) throw Error(ErrorCode::TooLarge, "mean-square enumeration exceeds cap");

  // phase[h] = h.u mod q, updated incrementally as u runs over F_q^k.
  std::vector<u64> phase(pts.size(), 0);
  std::vector<u64> u(k, 0);
  double total = 0;
  for (;;) {
    cplx acc = 0;
    for (u64 p : phase) acc += ctx.e_q(p);
    total += std::norm(acc);

    std::size_t pos = 0;
    while (pos < k) {
      ++u[pos];
      if (u[pos] < q) {
        for (std::size_t h = 0; h < pts.size(); ++h) phase[h] = addmod(phase[h], pts[h][pos], q);
        break;
      }
      u[pos] = 0;
      // wrapped: phase contribution of coordinate pos returns to zero
      for (std::size_t h = 0; h < pts.size(); ++h) phase[h] = addmod(phase[h], pts[h][pos], q);
      ++pos;
    }
    if (pos == k) break;
  }
  const double dim = static_cast<double>(k) - static_cast<double>(a.rank());
  return total * std::pow(static_cast<double>(q), -dim) / std::pow(static_cast<double>(q), static_cast<double>(k));
}

double mean_square_expected(const FieldCtx& ctx, const TorusMatrix& a) {
  const double dim = static_cast<double>(a.cols()) - static_cast<double>(a.rank());
  return static_cast<double>(subgroup_order(ctx, a)) / std::pow(static_cast<double>(ctx.q()), dim);
}

DualityPair duality_check(const FieldCtx& ctx, const TorusMatrix& a, std::span<const u64> u, u64 cap) {
  const std::size_t k = a.cols();
  if (u.size() != k) throw Error(ErrorCode::PreconditionViolated, "u has wrong length");
  for (u64 x : u) require_unit(ctx, x);

  const auto perp = subgroup_perp(ctx, a, cap);
  const auto g = gauss_all(ctx);
  const u64 n = ctx.order();

  cplx lhs = 0;
  for (const auto& chi : perp) {
    cplx eps = 1.0;
    u64 phase = 0;
    for (std::size_t j = 0; j < k; ++j) {
      eps *= g[chi[j]];
      phase = (phase + arith::mulmod(chi[j], ctx.dlog(u[j]), n)) % n;
    }
    lhs += eps * std::conj(ctx.e_order(static_cast<i64>(phase)));
  }
  lhs /= static_cast<double>(perp.size());

  const cplx rhs =
      t_general(ctx, a, u, cap) * std::pow(static_cast<double>(ctx.q()), -static_cast<double>(a.rank()) / 2.0);
  return {lhs, rhs};
}

WeilReport weil_report(const FieldCtx& ctx, i64 a, i64 b, bool strict) {
  require_exponents(a, b);
  WeilReport rep;
  const u64 m = static_cast<u64>(std::max(std::llabs(a), std::llabs(b)));
  rep.applicable = (a + b != 0) && ctx.q() >= m * m;
  if (strict && !rep.applicable)
    throw Error(ErrorCode::PreconditionViolated, "Weil bound needs a+b != 0 and q >= max(|a|,|b|)^2");
  rep.bound = (a > 0) == (b > 0) ? static_cast<double>(std::llabs(a) + std::llabs(b)) : static_cast<double>(m);

  const auto table = t_tilde_all(ctx, a, b);
  for (u64 u = 1; u < ctx.q(); ++u) {
    const double v = std::abs(table[u]);
    if (v > rep.max_abs) {
      rep.max_abs = v;
      rep.argmax = u;
    }
  }
  rep.ok = rep.applicable && rep.max_abs <= rep.bound + 1e-8;
  return rep;
}

}  // namespace tml
