#include "doctest.h"

#include <cmath>
#include <map>
#include <numbers>

#include "tml/error.hpp"
#include "tml/expsum.hpp"
#include "tml/lfun.hpp"
#include "tml/special.hpp"

using namespace tml;

namespace {

using u64 = std::uint64_t;
using i64 = std::int64_t;

u64 pw(u64 x, i64 e, u64 q) {
  if (e < 0) {
    x = arith::powmod(x, q - 2, q);
    e = -e;
  }
  return arith::powmod(x, static_cast<u64>(e), q);
}

// Weights for parity (ta, tb) and scale Z, truncated as in the library.
std::vector<double> weights(int ta, int tb, double z) {
  AfeParams p;
  return afe_weight_table(AfeWeight(ta, tb), z, p.tail_tol);
}

struct Brute {
  double n_even = 0, n_odd = 0;
  cplx p_even = 0, p_odd = 0;
};

// Double loop over m, n with the congruence tested by modular powers and T~
// from the parametrized single-value routine.
Brute brute_terms(u64 q, i64 a, i64 b, double x, double y) {
  const FieldCtx ctx = build_ctx(q);
  const int ta = static_cast<int>(arith::mod(a, 2)), tb = static_cast<int>(arith::mod(b, 2));
  const auto wx = weights(0, 0, x), wy = weights(0, 0, y);
  const auto ox = weights(ta, tb, x), oy = weights(ta, tb, y);
  std::map<u64, cplx> t2, t1;
  auto tt = [&](std::map<u64, cplx>& cache, i64 aa, i64 bb, u64 u) {
    auto it = cache.find(u);
    if (it != cache.end()) return it->second;
    return cache[u] = t_tilde(ctx, aa, bb, u);
  };
  Brute out;
  const double rq = std::sqrt(static_cast<double>(q));
  auto run = [&](const std::vector<double>& w, auto&& body) {
    const u64 k = w.size() - 1;
    for (u64 m = 1; m <= k; ++m)
      for (u64 n = 1; m * n <= k; ++n) {
        if ((m * n) % q == 0) continue;
        body(pw(m % q, a, q) * pw(n % q, b, q) % q, w[m * n]);
      }
  };
  run(wx, [&](u64 u, double w) {
    if (u * u % q == 1) out.n_even += 0.5 * w;
  });
  run(ox, [&](u64 u, double w) {
    if (u == 1) out.n_odd += 0.5 * w;
    if (u == q - 1) out.n_odd -= 0.5 * w;
  });
  run(wy, [&](u64 u, double w) { out.p_even += w * tt(t2, 2 * a, 2 * b, u * u % q) / (2 * rq); });
  run(oy, [&](u64 u, double w) { out.p_odd += w * (tt(t1, a, b, u) - tt(t1, a, b, q - u)) / (2 * rq); });
  return out;
}

}  // namespace

TEST_CASE("l_central examples") {
  auto c5 = build_ctx(5);
  const cplx triv = l_central(Character(c5, 0));
  CHECK(triv.real() == doctest::Approx(kZetaHalf * (1 - 1 / std::sqrt(5.0))).epsilon(1e-12));
  CHECK(triv.real() == doctest::Approx(-0.8072639).epsilon(1e-6));
  CHECK(std::abs(l_central(Character(c5, 2)).imag()) < 1e-10);

  auto c7 = build_ctx(7);
  for (i64 j = 1; j < 6; ++j)
    CHECK(std::abs(l_central(Character(c7, j)) - std::conj(l_central(Character(c7, -j)))) < 1e-12);
}

TEST_CASE("l_central_all matches per-character values") {
  auto c101 = build_ctx(101);
  const auto t = l_central_all(c101);
  CHECK(t.method == "hurwitz_batch");
  REQUIRE(t.values.size() == 100);
  double mx = 0;
  for (i64 j = 0; j < 100; ++j) mx = std::max(mx, std::abs(t.values[j] - l_central(Character(c101, j))));
  CHECK(mx < 1e-7);
  const auto t2 = l_central_all(c101, 2);
  for (std::size_t j = 0; j < 100; ++j) CHECK(t2.values[j] == t.values[j]);

  auto c7 = build_ctx(7);
  CHECK(std::abs(l_central_all(c7).values[0] - kZetaHalf * (1 - 1 / std::sqrt(7.0))) < 1e-9);

  // First moment: (1/(q-1)) sum_chi L(1/2, chi) = q^{-1/2} zeta(1/2, 1/q).
  auto c13 = build_ctx(13);
  const auto t13 = l_central_all(c13);
  cplx s = 0;
  for (auto v : t13.values) s += v;
  s /= 12.0;
  CHECK(std::abs(s - hurwitz_zeta_half(1.0 / 13) / std::sqrt(13.0)) < 1e-10);
}

TEST_CASE("gamma_factor") {
  const double pi = std::numbers::pi;
  const double g14 = 3.6256099082219083, g34 = 1.2254167024651776;
  CHECK(gamma_factor(0.5, 0, 0).real() == doctest::Approx(g14 * g14 / std::sqrt(pi)).epsilon(1e-12));
  CHECK(gamma_factor(0.5, 1, 1).real() == doctest::Approx(g34 * g34 / std::sqrt(pi)).epsilon(1e-12));
  const cplx s(0.7, 3.1);
  for (int t : {0, 1})
    CHECK(std::abs(gamma_factor(std::conj(s), t, 1 - t) - std::conj(gamma_factor(s, t, 1 - t))) <
          1e-14 * std::abs(gamma_factor(s, t, 1 - t)));
  CHECK_THROWS_AS(gamma_factor(0.0, 0, 1), Error);
  CHECK_THROWS_AS(gamma_factor(-1.0, 0, 1), Error);
}

TEST_CASE("V reference values") {
  const AfeWeight even(0, 0), odd(1, 1), mixed(0, 1);
  // Reference values from an independent 30-digit evaluation of the same integral.
  const std::pair<double, double> ref[] = {
      {1e-6, 0.9818643009}, {0.01, 0.4573173720}, {1.0, 0.01766803752}, {10.0, 4.11707592e-4},
      {100.0, 1.406617859e-6}, {1e3, 5.70932429e-10}, {1e4, 2.4182581e-14}};
  for (auto [y, v] : ref) CHECK(even.direct(y) == doctest::Approx(v).epsilon(1e-8));
  CHECK(odd.direct(1.0) == doctest::Approx(0.1031217275).epsilon(1e-8));
  CHECK(mixed.direct(1.0) == doctest::Approx(0.04345335826).epsilon(1e-8));
}

TEST_CASE("V near zero and at infinity") {
  const AfeWeight even(0, 0), odd(1, 1);
  // For even parity V(y) - 1 is of order y^{1/2} log y; for (1,1) it is O(y^{3/2}).
  for (double y : {1e-6, 1e-9, 1e-12}) {
    CHECK(std::abs(1 - even(y)) <= 2 * std::sqrt(y) * std::abs(std::log(y)));
    CHECK(std::abs(1 - odd(y)) <= 1e-6);
  }
  CHECK(std::abs(1 - odd.direct(1e-6)) < 1e-6);
  CHECK(std::abs(even.direct(1e3)) < 1e-8);
  CHECK(std::abs(odd.direct(1e3)) < 1e-8);
  CHECK(v_weight(2.0, 0, 1) == AfeWeight(0, 1).direct(2.0));
}

TEST_CASE("V contour independence") {
  for (auto [ta, tb] : {std::pair{0, 0}, std::pair{1, 1}, std::pair{0, 1}}) {
    const AfeWeight v(ta, tb);
    for (double y : {0.5, 1.0, 3.0, 10.0, 100.0}) CHECK(std::abs(v.on_line(y, 2.0) - v.on_line(y, 3.0)) < 1e-9);
    for (double y : {1e-6, 1e-3, 0.1, 0.5, 2.0})
      CHECK(std::abs(v.on_line(y, -0.25) - v.on_line(y, -0.2)) < 1e-9);
    // Crossing the pole at u = 0 adds its residue.
    CHECK(std::abs(v.on_line(0.7, -0.25) - v.on_line(0.7, 3.0)) < 1e-9);
  }
}

TEST_CASE("V interpolant matches quadrature") {
  for (auto g : {TestFunction::Gauss, TestFunction::Gauss2}) {
    const AfeWeight v(0, 1, g);
    double mx = 0;
    for (int i = 0; i < 3000; ++i) {
      const double y = std::exp(-39.0 + i * 0.0173);
      mx = std::max(mx, std::abs(v(y) - v.direct(y)));
    }
    CHECK(mx < 1e-13);
  }
}

TEST_CASE("V quadrature failure") {
  try {
    const AfeWeight v(0, 0, TestFunction::Gauss, Quadrature{1.0, 0.05});
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::QuadratureFailure);
  }
  CHECK_THROWS_AS(v_weight(0.0, 0, 0), Error);
}

TEST_CASE("AFE examples") {
  auto c11 = build_ctx(11);
  const auto eps = gauss_all(c11);
  const Character chi1(c11, 1), chi2(c11, 2);
  const auto p11 = make_afe_params(c11, 1, 1, 11);
  CHECK(p11.x * p11.y == doctest::Approx(121.0).epsilon(1e-12));
  CHECK(std::abs(afe_eval(chi1, p11, eps) - l_central(chi1) * l_central(chi1)) < 1e-6);
  const auto pm = make_afe_params(c11, 1, -1, 11);
  CHECK(std::abs(afe_eval(chi2, pm, eps) - std::norm(l_central(chi2))) < 1e-6);
  try {
    (void)afe_eval(Character(c11, 5), make_afe_params(c11, 2, 1, 11), eps);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TrivialPower);
  }
  CHECK_THROWS_AS(make_afe_params(c11, 0, 1, 11), Error);
  CHECK_THROWS_AS(make_afe_params(c11, 1, 1, -1), Error);
}

TEST_CASE("AFE identity and X-independence") {
  for (u64 q : {11ULL, 31ULL}) {
    const auto ctx = build_ctx(q);
    const auto eps = gauss_all(ctx);
    const auto lt = l_central_all(ctx);
    const u64 n = q - 1;
    const double qd = static_cast<double>(q);
    for (auto [a, b] : {std::pair<i64, i64>{1, 1}, {1, -1}, {2, 1}, {1, -2}, {3, -1}}) {
      std::vector<std::vector<cplx>> rhs;
      for (double x : {qd / 4, qd, 4 * qd, qd * qd / 8}) rhs.push_back(afe_rhs_all(ctx, make_afe_params(ctx, a, b, x), eps));
      bool single_checked = false;
      for (u64 j = 0; j < n; ++j) {
        const u64 ja = arith::mod(a * static_cast<i64>(j), n), jb = arith::mod(b * static_cast<i64>(j), n);
        if (ja == 0 || jb == 0) continue;
        const cplx exact = lt.values[ja] * lt.values[jb];
        for (const auto& r : rhs) CHECK(std::abs(r[j] - exact) < 1e-6);
        if (!single_checked && j % 2 == 1) {
          const Character chi(ctx, static_cast<i64>(j));
          CHECK(std::abs(afe_eval(chi, make_afe_params(ctx, a, b, qd), eps) - rhs[1][j]) < 1e-10);
          single_checked = true;
        }
      }
    }
  }
}

TEST_CASE("Gauss-sum prefactor for even characters") {
  const auto ctx = build_ctx(31);
  const auto eps = gauss_all(ctx);
  for (i64 a : {1, 2, 3})
    for (u64 j = 0; j < 30; j += 2) {
      const u64 ja = arith::mod(a * static_cast<i64>(j), 30);
      if (ja == 0) continue;
      CHECK(std::abs(eps[ja] * eps[(30 - ja) % 30] - 1.0) < 1e-12);
    }
}

TEST_CASE("pair_sums against double loop") {
  const auto ctx = build_ctx(13);
  std::vector<double> w(400);
  for (std::size_t k = 1; k < w.size(); ++k) w[k] = 1.0 / static_cast<double>(k * k % 97 + 1);
  for (auto [a, b] : {std::pair<i64, i64>{1, 1}, {2, -3}, {-1, 4}}) {
    std::vector<double> ref(12, 0.0);
    for (u64 m = 1; m < w.size(); ++m)
      for (u64 n = 1; m * n < w.size(); ++n) {
        if (m * n % 13 == 0) continue;
        const u64 u = pw(m % 13, a, 13) * pw(n % 13, b, 13) % 13;
        ref[ctx.dlog(u)] += w[m * n];
      }
    const auto got = pair_sums(ctx, a, b, w);
    for (int e = 0; e < 12; ++e) CHECK(got[e] == doctest::Approx(ref[e]).epsilon(1e-13));
  }
}

TEST_CASE("N and P terms against brute double sums") {
  for (u64 q : {7ULL, 11ULL}) {
    const auto ctx = build_ctx(q);
    const auto eps = gauss_all(ctx);
    const double qd = static_cast<double>(q);
    for (auto [a, b] : {std::pair<i64, i64>{1, 1}, {1, -1}, {2, 1}, {1, -2}}) {
      const double x = qd, y = qd;
      const Brute br = brute_terms(q, a, b, x, y);
      const auto p = make_afe_params(ctx, a, b, x);
      const auto sums = afe_sums(ctx, p);
      CHECK(n_term(ctx, sums.even_x, Parity::Even) == doctest::Approx(br.n_even).epsilon(1e-12));
      CHECK(n_term(ctx, sums.odd_x, Parity::Odd) == doctest::Approx(br.n_odd).epsilon(1e-12));
      CHECK(std::abs(p_term(ctx, a, b, sums.even_y, Parity::Even, eps) - br.p_even) < 1e-10);
      CHECK(std::abs(p_term(ctx, a, b, sums.odd_y, Parity::Odd, eps) - br.p_odd) < 1e-10);
      CHECK(n_term(ctx, a, b, x, Parity::Even) == doctest::Approx(br.n_even).epsilon(1e-12));
      CHECK(std::abs(p_term(ctx, a, b, y, Parity::Odd) - br.p_odd) < 1e-10);
    }
  }
}

TEST_CASE("N and P examples") {
  // (1,1): the (1,1) term dominates N.
  const auto big = build_ctx(1009);
  const double nt = n_term(big, 1, 1, 1009.0, Parity::Even);
  CHECK(std::abs(nt - 0.5 * AfeWeight(0, 0)(1.0 / 1009)) < 0.05);

  // (1,-1): P through the closed form for T~_{2,-2}.
  const auto ctx = build_ctx(31);
  const auto eps = gauss_all(ctx);
  const auto wy = weights(0, 0, 31.0);
  cplx ref = 0;
  for (u64 m = 1; m < wy.size(); ++m)
    for (u64 n = 1; m * n < wy.size(); ++n) {
      if (m * n % 31 == 0) continue;
      const u64 u = pw(m % 31, 2, 31) * pw(n % 31, -2, 31) % 31;
      ref += wy[m * n] * t_tilde_antidiagonal(ctx, 2, u);
    }
  ref /= 2 * std::sqrt(31.0);
  CHECK(std::abs(p_term(ctx, 1, -1, 31.0, Parity::Even) - ref) < 1e-8);

  // Tiny Y leaves nothing.
  CHECK(std::abs(p_term(ctx, 1, 1, 1e-8, Parity::Even)) < 1e-10);
  CHECK(std::abs(p_term(ctx, 1, 1, 1e-8, Parity::Odd)) < 1e-10);
}

TEST_CASE("decomposition of the bracket sums") {
  for (u64 q : {13ULL, 101ULL}) {
    const auto ctx = build_ctx(q);
    const auto eps = gauss_all(ctx);
    const u64 n = q - 1;
    for (auto [a, b] : {std::pair<i64, i64>{1, 1}, {1, -1}, {2, 1}, {1, -2}}) {
      const auto p = make_afe_params(ctx, a, b, static_cast<double>(q) * 2);
      const auto sums = afe_sums(ctx, p);
      const auto rhs = afe_rhs_all(ctx, p, eps, sums);
      cplx even = 0, odd = 0;
      for (u64 j = 0; j < n; ++j) (j % 2 == 0 ? even : odd) += rhs[j];
      even /= static_cast<double>(n);
      odd /= static_cast<double>(n);
      const cplx ne = n_term(ctx, sums.even_x, Parity::Even) + p_term(ctx, a, b, sums.even_y, Parity::Even, eps);
      const cplx no = n_term(ctx, sums.odd_x, Parity::Odd) +
                      std::pow(cplx(0, -1), sums.beta) * p_term(ctx, a, b, sums.odd_y, Parity::Odd, eps);
      CHECK(std::abs(even - ne) < 1e-9);
      CHECK(std::abs(odd - no) < 1e-9);
    }
  }
}
