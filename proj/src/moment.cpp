#include "tml/moment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "tml/arith.hpp"
#include "tml/error.hpp"
#include "tml/expsum.hpp"
#include "tml/special.hpp"

namespace tml {

namespace {

using arith::i64;
using arith::u64;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void check_exponents(i64 a, i64 b) {
  if (a == 0 || b == 0) throw Error(ErrorCode::ZeroExponent, "exponents must be nonzero");
}

void fill_prediction(MomentReport& r) {
  r.main_term = predict_main(r.a, r.b, r.q);
  r.abs_error = std::abs(r.moment - r.main_term);
}

}  // namespace

double const_C() {
  const double pi = std::numbers::pi;
  return std::numbers::egamma / 2 - pi / 4 - 1.5 * std::log(2.0) - 0.5 * std::log(pi);
}

double const_C_digamma() {
  return std::numbers::egamma + 0.5 * digamma(0.25) - 0.5 * std::log(std::numbers::pi);
}

double predict_main(i64 a, i64 b, u64 q) {
  check_exponents(a, b);
  if (a + b == 0) return std::log(static_cast<double>(q)) + 2 * const_C();
  if ((a < 0) != (b < 0)) {
    const double g = static_cast<double>(arith::gcd(a, b));
    return zeta((std::abs(static_cast<double>(a)) + std::abs(static_cast<double>(b))) / (2 * g));
  }
  return 1.0;
}

MomentReport moment_from_table(const FieldCtx& ctx, const LTable& table, i64 a, i64 b) {
  check_exponents(a, b);
  const u64 n = ctx.order();
  const u64 am = arith::mod(a, n), bm = arith::mod(b, n);
  MomentReport r;
  r.q = ctx.q();
  r.a = a;
  r.b = b;
  for (u64 j = 0; j < n; ++j) {
    const cplx v = table.values[arith::mulmod(am, j, n)] * table.values[arith::mulmod(bm, j, n)];
    (j % 2 == 0 ? r.even_part : r.odd_part) += v;
  }
  const double inv = 1.0 / static_cast<double>(n);
  r.even_part *= inv;
  r.odd_part *= inv;
  r.moment = r.even_part + r.odd_part;
  r.nonvanishing = nonvanishing_count(ctx, table, a, b).count;
  r.method = "exact";
  fill_prediction(r);
  return r;
}

MomentReport moment_exact(const FieldCtx& ctx, i64 a, i64 b, unsigned workers) {
  check_exponents(a, b);
  const auto t0 = std::chrono::steady_clock::now();
  const LTable table = l_central_all(ctx, workers);
  MomentReport r = moment_from_table(ctx, table, a, b);
  r.seconds = seconds_since(t0);
  return r;
}

MomentReport afe_moment(const FieldCtx& ctx, i64 a, i64 b, double x, TestFunction g) {
  check_exponents(a, b);
  const auto t0 = std::chrono::steady_clock::now();
  const u64 n = ctx.order();
  const auto eps = gauss_all(ctx);
  const AfeParams p = make_afe_params(ctx, a, b, x, g);
  const AfeSums sums = afe_sums(ctx, p);

  MomentReport r;
  r.q = ctx.q();
  r.a = a;
  r.b = b;
  r.even_part = n_term(ctx, sums.even_x, Parity::Even) + p_term(ctx, a, b, sums.even_y, Parity::Even, eps);
  const cplx odd_phase = std::pow(cplx(0, -1), sums.beta);
  r.odd_part = n_term(ctx, sums.odd_x, Parity::Odd) + odd_phase * p_term(ctx, a, b, sums.odd_y, Parity::Odd, eps);

  const u64 am = arith::mod(a, n), bm = arith::mod(b, n);
  bool any_trivial = false;
  for (u64 j = 0; j < n && !any_trivial; ++j)
    any_trivial = arith::mulmod(am, j, n) == 0 || arith::mulmod(bm, j, n) == 0;
  if (any_trivial) {
    const auto rhs = afe_rhs_all(ctx, p, eps, sums);
    for (u64 j = 0; j < n; ++j) {
      const u64 ja = arith::mulmod(am, j, n), jb = arith::mulmod(bm, j, n);
      if (ja != 0 && jb != 0) continue;
      const cplx exact = l_central(Character(ctx, static_cast<i64>(ja))) * l_central(Character(ctx, static_cast<i64>(jb)));
      r.correction += exact - rhs[j];
    }
    r.correction /= static_cast<double>(n);
  }
  r.moment = r.even_part + r.odd_part + r.correction;
  r.method = "afe";
  fill_prediction(r);
  r.seconds = seconds_since(t0);
  return r;
}

cplx twisted_moment(const FieldCtx& ctx, const LTable& table, u64 rho) {
  if (rho % ctx.q() == 0) throw Error(ErrorCode::BadResidue, "rho must be a unit mod q");
  const u64 n = ctx.order();
  const u64 k = ctx.dlog(rho % ctx.q());
  cplx acc = 0;
  for (u64 j = 0; j < n; ++j)
    acc += ctx.e_order(static_cast<i64>(arith::mulmod(j, k, n))) * std::norm(table.values[j]);
  return acc / static_cast<double>(n);
}

double power_subfamily_moment(const FieldCtx& ctx, const LTable& table, i64 a) {
  if (a < 1) throw Error(ErrorCode::PreconditionViolated, "a must be positive");
  const u64 n = ctx.order();
  const u64 d = static_cast<u64>(arith::gcd(a, static_cast<i64>(n)));
  double acc = 0;
  for (u64 j = 0; j < n; j += d) acc += std::norm(table.values[j]);
  return acc / static_cast<double>(n);
}

std::vector<std::pair<i64, i64>> rational_roots(std::span<const i64> f) {
  std::size_t lead = 0;
  while (lead < f.size() && f[lead] == 0) ++lead;
  if (lead == f.size()) throw Error(ErrorCode::PreconditionViolated, "zero polynomial");
  const auto g = f.subspan(lead);
  std::vector<std::pair<i64, i64>> out;
  if (g.back() == 0) out.emplace_back(0, 1);

  std::size_t low = g.size() - 1;
  while (g[low] == 0) --low;
  auto divisors = [](i64 v) {
    std::vector<i64> d;
    v = std::abs(v);
    for (i64 k = 1; k * k <= v; ++k)
      if (v % k == 0) {
        d.push_back(k);
        if (k != v / k) d.push_back(v / k);
      }
    std::sort(d.begin(), d.end());
    return d;
  };
  // Candidates p/s with p | constant term, s | leading coefficient; s^deg f(p/s) is tested for zero.
  const auto deg = static_cast<int>(low);
  for (i64 p : divisors(g[low]))
    for (i64 s : divisors(g[0])) {
      if (arith::gcd(p, s) != 1) continue;
      for (i64 sign : {1, -1}) {
        long double acc = 0, sp = 1;
        for (int i = 0; i <= deg; ++i) {
          acc = acc * static_cast<long double>(sign * p) + static_cast<long double>(g[i]) * sp;
          sp *= static_cast<long double>(s);
        }
        if (acc == 0) out.emplace_back(sign * p, s);
      }
    }
  return out;
}

RootTwist root_twist(const FieldCtx& ctx, const LTable& table, std::span<const i64> f) {
  std::size_t lead = 0;
  while (lead < f.size() && f[lead] == 0) ++lead;
  if (f.size() < lead + 3) throw Error(ErrorCode::PreconditionViolated, "root_twist needs degree >= 2");
  if (!rational_roots(f).empty()) throw Error(ErrorCode::ReducibleHint, "polynomial has a rational root");

  const u64 q = ctx.q();
  RootTwist out;
  for (u64 x = 1; x < q; ++x) {
    u64 acc = 0;
    for (std::size_t i = lead; i < f.size(); ++i) acc = (arith::mulmod(acc, x, q) + arith::mod(f[i], q)) % q;
    if (acc == 0) {
      out.root = x;
      out.value = twisted_moment(ctx, table, x);
      break;
    }
  }
  return out;
}

Nonvanishing nonvanishing_count(const FieldCtx& ctx, const LTable& table, i64 a, i64 b) {
  check_exponents(a, b);
  const u64 n = ctx.order();
  const u64 am = arith::mod(a, n), bm = arith::mod(b, n);
  Nonvanishing out;
  out.total = n;
  for (u64 j = 0; j < n; ++j) {
    const cplx la = table.values[arith::mulmod(am, j, n)];
    const cplx lb = table.values[arith::mulmod(bm, j, n)];
    const double prod = std::abs(la * lb);
    const double thr = 1e-8 * std::max({1.0, std::abs(la), std::abs(lb)});
    if (prod > thr) ++out.count;
    if (prod >= 1e-10 && prod <= 1e-6) out.flagged.push_back(j);
  }
  out.fraction = static_cast<double>(out.count) / static_cast<double>(n);
  return out;
}

double diagonal_contribution(u64 q, double x, TestFunction g) {
  if (!(x > 0)) throw Error(ErrorCode::DomainError, "X must be positive");
  const AfeWeight v(0, 0, g);
  // V(1e5) is below 1e-19.
  const auto m_max = static_cast<u64>(std::sqrt(x * 1e5)) + 1;
  double acc = 0;
  for (u64 m = m_max; m >= 1; --m) {
    if (m % q == 0) continue;
    const double md = static_cast<double>(m);
    acc += v(md * md / x) / md;
  }
  return acc;
}

std::vector<MomentReport> sweep(i64 a, i64 b, std::span<const u64> qs, const SweepOptions& opt) {
  std::vector<MomentReport> out(qs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < qs.size(); i = next++) {
      MomentReport& r = out[i];
      try {
        const FieldCtx ctx = build_ctx(qs[i]);
        r = opt.method == Method::Exact ? moment_exact(ctx, a, b)
                                        : afe_moment(ctx, a, b, opt.afe_x_over_q * static_cast<double>(qs[i]));
      } catch (const Error& e) {
        r = MomentReport{};
        r.q = qs[i];
        r.a = a;
        r.b = b;
        r.method = opt.method == Method::Exact ? "exact" : "afe";
        r.status = std::string(to_string(e.code()));
      }
    }
  };
  const unsigned workers = std::max(1U, std::min<unsigned>(opt.workers, static_cast<unsigned>(qs.size())));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return out;
}

double fitted_slope(std::span<const MomentReport> reports) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (const auto& r : reports) {
    if (r.status != "ok" || !(r.abs_error > 0)) continue;
    const double lx = std::log(static_cast<double>(r.q)), ly = std::log(r.abs_error);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < 2) return std::nan("");
  const double den = count * sxx - sx * sx;
  if (den == 0) return std::nan("");
  return (count * sxy - sx * sy) / den;
}

}  // namespace tml
