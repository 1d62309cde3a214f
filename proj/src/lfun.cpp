#include "tml/lfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "tml/error.hpp"
#include "tml/expsum.hpp"
#include "tml/special.hpp"

namespace tml {

namespace {

using arith::i64;
using arith::u64;

constexpr double kPi = std::numbers::pi;
constexpr double kLeftContour = -0.25;
constexpr double kRightContour = 3.0;
constexpr double kRightContourGauss2 = 1.5;  // |G| = e^{2c^2} on the line

// Interpolation grid in log y.
constexpr double kLogLo = -40.0;
constexpr double kLogHiMax = 40.0;
constexpr double kPieceWidth = 0.5;
constexpr int kChebNodes = 26;

double g_scale(TestFunction g) { return g == TestFunction::Gauss ? 1.0 : 2.0; }

// i^{-beta}
cplx i_pow_neg(int beta) {
  switch (((beta % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, -1};
    case 2: return {-1, 0};
    default: return {0, 1};
  }
}

}  // namespace

cplx l_central(const Character& chi) {
  const FieldCtx& ctx = chi.ctx();
  const double q = static_cast<double>(ctx.q());
  cplx acc = 0;
  for (u64 a = 1; a < ctx.q(); ++a) acc += chi.eval(a) * hurwitz_zeta_half(static_cast<double>(a) / q);
  return acc / std::sqrt(q);
}

LTable l_central_all(const FieldCtx& ctx, unsigned workers) {
  const u64 n = ctx.order();
  const double q = static_cast<double>(ctx.q());
  std::vector<cplx> z(n);
  auto fill = [&](u64 lo, u64 hi) {
    for (u64 k = lo; k < hi; ++k) z[k] = hurwitz_zeta_half(static_cast<double>(ctx.gpow(static_cast<i64>(k))) / q);
  };
  workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<u64>(1, n / 4096))));
  if (workers == 1) {
    fill(0, n);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(fill, n * w / workers, n * (w + 1) / workers);
    for (auto& t : pool) t.join();
  }
  LTable out{character_transform(ctx, z), "hurwitz_batch"};
  const double s = 1.0 / std::sqrt(q);
  for (auto& v : out.values) v *= s;
  return out;
}

cplx gamma_factor(cplx s, int ta, int tb) {
  return std::exp(-s * std::log(kPi)) * gamma((s + static_cast<double>(ta)) / 2.0) *
         gamma((s + static_cast<double>(tb)) / 2.0);
}

AfeWeight::AfeWeight(int ta, int tb, TestFunction g, Quadrature quad)
    : ta_(ta & 1), tb_(tb & 1), g_(g), quad_(quad) {
  if (!(quad_.h > 0) || !(quad_.t_max > 0)) throw Error(ErrorCode::PreconditionViolated, "bad quadrature parameters");
  right_ = make_line(g == TestFunction::Gauss ? kRightContour : kRightContourGauss2);
  left_ = make_line(kLeftContour);

  log_lo_ = kLogLo;
  // Tabulate until V(y) y^{1/2} is far below any truncation tolerance.
  log_hi_ = 6.0;
  while (log_hi_ < kLogHiMax && std::abs(direct(std::exp(log_hi_))) * std::exp(0.5 * log_hi_) > 1e-20) log_hi_ += 1.0;
  piece_ = kPieceWidth;
  const auto pieces = static_cast<std::size_t>(std::ceil((log_hi_ - log_lo_) / piece_));
  cheb_.assign(pieces, std::vector<double>(kChebNodes, 0.0));
  std::vector<double> f(kChebNodes);
  for (std::size_t p = 0; p < pieces; ++p) {
    const double mid = log_lo_ + (static_cast<double>(p) + 0.5) * piece_;
    for (int i = 0; i < kChebNodes; ++i) {
      const double x = std::cos(kPi * (i + 0.5) / kChebNodes);
      f[i] = direct(std::exp(mid + 0.5 * piece_ * x));
    }
    for (int k = 0; k < kChebNodes; ++k) {
      double c = 0;
      for (int i = 0; i < kChebNodes; ++i) c += f[i] * std::cos(kPi * k * (i + 0.5) / kChebNodes);
      cheb_[p][k] = 2.0 * c / kChebNodes;
    }
  }
}

AfeWeight::Line AfeWeight::make_line(double c) const {
  if (c == 0 || c <= -0.5) throw Error(ErrorCode::PreconditionViolated, "contour must avoid u = 0 and Re u <= -1/2");
  const double kappa = g_scale(g_);
  const double ta = ta_, tb = tb_;
  const cplx lg0 = log_gamma((0.5 + ta) / 2.0) + log_gamma((0.5 + tb) / 2.0);
  Line line;
  line.c = c;
  const auto steps = static_cast<std::size_t>(std::llround(quad_.t_max / quad_.h));
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) * quad_.h;
    const cplx u(c, t);
    const cplx log_ratio =
        -u * std::log(kPi) + log_gamma((0.5 + u + ta) / 2.0) + log_gamma((0.5 + u + tb) / 2.0) - lg0;
    // The line integral over t in R of a conjugate-symmetric integrand is
    // (h / 2 pi) [F(0) + 2 Re sum_{t > 0} F(t)].
    const double w = (i == 0 ? 1.0 : 2.0) * quad_.h / (2 * kPi);
    line.t.push_back(t);
    line.f.push_back(w * std::exp(kappa * u * u + log_ratio) / u);
  }
  return line;
}

double AfeWeight::eval_line(const Line& line, double y) const {
  const double ly = std::log(y);
  double acc = 0;
  for (std::size_t i = 0; i < line.t.size(); ++i) {
    const cplx term = std::exp(cplx(-line.c * ly, -line.t[i] * ly)) * line.f[i];
    acc += term.real();
  }
  const double last = std::abs(line.f.back()) * std::exp(-line.c * ly);
  if (last > 1e-15 * std::max(1.0, std::abs(acc)))
    throw Error(ErrorCode::QuadratureFailure, "integrand not negligible at the truncation height");
  return line.c < 0 ? 1.0 + acc : acc;
}

double AfeWeight::on_line(double y, double c) const {
  if (!(y > 0)) throw Error(ErrorCode::DomainError, "V needs y > 0");
  if (c == right_.c) return eval_line(right_, y);
  if (c == left_.c) return eval_line(left_, y);
  return eval_line(make_line(c), y);
}

double AfeWeight::direct(double y) const {
  if (!(y > 0)) throw Error(ErrorCode::DomainError, "V needs y > 0");
  return eval_line(y >= 1.0 ? right_ : left_, y);
}

double AfeWeight::operator()(double y) const {
  if (!(y > 0)) throw Error(ErrorCode::DomainError, "V needs y > 0");
  const double z = std::log(y);
  if (z < log_lo_ || z >= log_hi_) return direct(y);
  auto p = static_cast<std::size_t>((z - log_lo_) / piece_);
  if (p >= cheb_.size()) p = cheb_.size() - 1;
  const double mid = log_lo_ + (static_cast<double>(p) + 0.5) * piece_;
  const double x = (z - mid) / (0.5 * piece_);
  const auto& c = cheb_[p];
  // Clenshaw
  double b1 = 0, b2 = 0;
  for (int k = kChebNodes - 1; k >= 1; --k) {
    const double b0 = 2 * x * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + 0.5 * c[0];
}

double AfeWeight::tail_cutoff(double z, double tol) const {
  // Tail of sum_{k > Z y0} d(k) k^{-1/2} |V(k/Z)|, bounded by
  // Z^{1/2} int_{y0}^inf y^{1/2} log(e Z y) |V(y)| dlog y.
  const double step = 0.02;
  double acc = 0;
  double ly = log_hi_;
  const double root_z = std::sqrt(z);
  while (ly > log_lo_) {
    const double y = std::exp(ly);
    const double f = root_z * std::sqrt(y) * std::max(1.0, std::log(std::exp(1.0) * z * y)) * std::abs((*this)(y));
    acc += f * step;
    if (acc > tol) return std::exp(ly + step);
    ly -= step;
  }
  return std::exp(log_lo_);
}

double v_weight(double y, int ta, int tb, TestFunction g) { return AfeWeight(ta, tb, g).direct(y); }

AfeParams make_afe_params(const FieldCtx& ctx, i64 a, i64 b, double x, TestFunction g) {
  if (a == 0 || b == 0) throw Error(ErrorCode::ZeroExponent, "exponents must be nonzero");
  if (!(x > 0)) throw Error(ErrorCode::DomainError, "X must be positive");
  AfeParams p;
  p.a = a;
  p.b = b;
  p.x = x;
  const double q = static_cast<double>(ctx.q());
  p.y = q * q / x;
  p.g = g;
  return p;
}

std::vector<double> afe_weight_table(const AfeWeight& v, double z, double tail_tol) {
  const double y0 = v.tail_cutoff(z, tail_tol);
  const double kmax = std::ceil(z * y0);
  if (kmax > 4e8) throw Error(ErrorCode::TooLarge, "smoothed sum too long");
  const auto k_end = static_cast<std::size_t>(std::max(kmax, 1.0)) + 1;
  std::vector<double> w(k_end, 0.0);
  for (std::size_t k = 1; k < k_end; ++k) {
    const double kd = static_cast<double>(k);
    w[k] = v(kd / z) / std::sqrt(kd);
  }
  return w;
}

std::vector<double> pair_sums(const FieldCtx& ctx, i64 a, i64 b, std::span<const double> w) {
  const u64 q = ctx.q();
  const u64 n = ctx.order();
  std::vector<double> out(n, 0.0);
  if (w.size() < 2) return out;
  const u64 kmax = w.size() - 1;

  const u64 am = arith::mod(a, n), bm = arith::mod(b, n);
  std::vector<u64> bd(q, 0);
  for (u64 r = 1; r < q; ++r) bd[r] = arith::mulmod(bm, ctx.dlog(r), n);

  for (u64 m = 1; m <= kmax; ++m) {
    const u64 rm = m % q;
    if (rm == 0) continue;
    const u64 base = arith::mulmod(am, ctx.dlog(rm), n);
    const u64 nmax = kmax / m;
    u64 r = 1;
    u64 k = m;
    for (u64 nn = 1; nn <= nmax; ++nn, k += m) {
      if (r != 0) {
        u64 e = base + bd[r];
        if (e >= n) e -= n;
        out[e] += w[k];
      }
      if (++r == q) r = 0;
    }
  }
  return out;
}

AfeSums afe_sums(const FieldCtx& ctx, const AfeParams& p) {
  AfeWeight v_even(0, 0, p.g, p.quad);
  const int pa = static_cast<int>(arith::mod(p.a, 2)), pb = static_cast<int>(arith::mod(p.b, 2));
  AfeSums s;
  s.beta = pa + pb;

  const auto w_even_x = afe_weight_table(v_even, p.x, p.tail_tol);
  s.even_x = pair_sums(ctx, p.a, p.b, w_even_x);
  if (p.y == p.x) {
    s.even_y = s.even_x;
  } else {
    s.even_y = pair_sums(ctx, p.a, p.b, afe_weight_table(v_even, p.y, p.tail_tol));
  }
  if (pa == 0 && pb == 0) {
    s.odd_x = s.even_x;
    s.odd_y = s.even_y;
    return s;
  }
  AfeWeight v_odd(pa, pb, p.g, p.quad);
  s.odd_x = pair_sums(ctx, p.a, p.b, afe_weight_table(v_odd, p.x, p.tail_tol));
  if (p.y == p.x) {
    s.odd_y = s.odd_x;
  } else {
    s.odd_y = pair_sums(ctx, p.a, p.b, afe_weight_table(v_odd, p.y, p.tail_tol));
  }
  return s;
}

std::vector<cplx> afe_rhs_all(const FieldCtx& ctx, const AfeParams& p, std::span<const cplx> eps_table) {
  return afe_rhs_all(ctx, p, eps_table, afe_sums(ctx, p));
}

std::vector<cplx> afe_rhs_all(const FieldCtx& ctx, const AfeParams& p, std::span<const cplx> eps_table,
                              const AfeSums& sums) {
  const u64 n = ctx.order();
  if (eps_table.size() != n) throw Error(ErrorCode::PreconditionViolated, "Gauss table has wrong length");
  auto as_complex = [](const std::vector<double>& v) { return std::vector<cplx>(v.begin(), v.end()); };
  // S(j) = sum_e A[e] e(je/n) = sum chi_j(m^a n^b) w(mn); the dual sum uses S(-j).
  const auto ex = character_transform(ctx, as_complex(sums.even_x));
  const auto ey = character_transform(ctx, as_complex(sums.even_y));
  const auto ox = character_transform(ctx, as_complex(sums.odd_x));
  const auto oy = character_transform(ctx, as_complex(sums.odd_y));
  const u64 am = arith::mod(p.a, n), bm = arith::mod(p.b, n);
  const cplx odd_phase = i_pow_neg(sums.beta);

  std::vector<cplx> out(n);
  for (u64 j = 0; j < n; ++j) {
    const u64 jn = (n - j) % n;
    const cplx root = eps_table[arith::mulmod(am, j, n)] * eps_table[arith::mulmod(bm, j, n)];
    if (j % 2 == 0) {
      out[j] = ex[j] + root * ey[jn];
    } else {
      out[j] = ox[j] + root * odd_phase * oy[jn];
    }
  }
  return out;
}

cplx afe_rhs(const Character& chi, const AfeParams& p, std::span<const cplx> eps_table) {
  const FieldCtx& ctx = chi.ctx();
  const u64 n = ctx.order();
  const u64 j = chi.index();
  const auto sums = afe_sums(ctx, p);
  const bool odd = j % 2 == 1;
  const auto& sx = odd ? sums.odd_x : sums.even_x;
  const auto& sy = odd ? sums.odd_y : sums.even_y;
  cplx fx = 0, fy = 0;
  for (u64 e = 0; e < n; ++e) {
    const u64 ph = arith::mulmod(j, e, n);
    fx += sx[e] * ctx.e_order(static_cast<i64>(ph));
    fy += sy[e] * std::conj(ctx.e_order(static_cast<i64>(ph)));
  }
  const cplx root = eps_table[arith::mulmod(arith::mod(p.a, n), j, n)] * eps_table[arith::mulmod(arith::mod(p.b, n), j, n)];
  return fx + root * (odd ? i_pow_neg(sums.beta) : cplx(1.0)) * fy;
}

cplx afe_eval(const Character& chi, const AfeParams& p, std::span<const cplx> eps_table) {
  if (chi.power(p.a).is_trivial() || chi.power(p.b).is_trivial())
    throw Error(ErrorCode::TrivialPower, "the AFE needs chi^a and chi^b nontrivial");
  return afe_rhs(chi, p, eps_table);
}

double n_term(const FieldCtx& ctx, std::span<const double> sums_x, Parity parity) {
  const u64 half = ctx.order() / 2;
  return parity == Parity::Even ? 0.5 * (sums_x[0] + sums_x[half]) : 0.5 * (sums_x[0] - sums_x[half]);
}

double n_term(const FieldCtx& ctx, i64 a, i64 b, double x, Parity parity, TestFunction g) {
  const int ta = parity == Parity::Even ? 0 : static_cast<int>(arith::mod(a, 2));
  const int tb = parity == Parity::Even ? 0 : static_cast<int>(arith::mod(b, 2));
  AfeParams p;
  const AfeWeight v(ta, tb, g, p.quad);
  const auto sums = pair_sums(ctx, a, b, afe_weight_table(v, x, p.tail_tol));
  return n_term(ctx, sums, parity);
}

cplx p_term(const FieldCtx& ctx, i64 a, i64 b, std::span<const double> sums_y, Parity parity,
            std::span<const cplx> eps_table) {
  const u64 q = ctx.q();
  const u64 n = ctx.order();
  cplx acc = 0;
  if (parity == Parity::Even) {
    const auto t2 = t_tilde_all(ctx, 2 * a, 2 * b, eps_table);
    for (u64 e = 0; e < n; ++e) acc += sums_y[e] * t2[ctx.gpow(static_cast<i64>(2 * e))];
  } else {
    const auto t = t_tilde_all(ctx, a, b, eps_table);
    for (u64 e = 0; e < n; ++e) {
      const u64 u = ctx.gpow(static_cast<i64>(e));
      acc += sums_y[e] * (t[u] - t[q - u]);
    }
  }
  return acc / (2.0 * std::sqrt(static_cast<double>(q)));
}

cplx p_term(const FieldCtx& ctx, i64 a, i64 b, double y, Parity parity, TestFunction g) {
  const int ta = parity == Parity::Even ? 0 : static_cast<int>(arith::mod(a, 2));
  const int tb = parity == Parity::Even ? 0 : static_cast<int>(arith::mod(b, 2));
  AfeParams p;
  const AfeWeight v(ta, tb, g, p.quad);
  const auto sums = pair_sums(ctx, a, b, afe_weight_table(v, y, p.tail_tol));
  return p_term(ctx, a, b, sums, parity, gauss_all(ctx));
}

}  // namespace tml
