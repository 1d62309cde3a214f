#include "tml/toric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "tml/error.hpp"

namespace tml {

namespace {

using arith::i64;
using arith::u64;
using i128 = __int128;
using Vec2 = std::pair<i64, i64>;

i128 floor_div(i128 a, i128 b) {
  if (b < 0) {
    a = -a;
    b = -b;
  }
  i128 q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

i128 dot(const Vec2& x, const Vec2& y) {
  return static_cast<i128>(x.first) * y.first + static_cast<i128>(x.second) * y.second;
}

i128 cross(const Vec2& x, const Vec2& y) {
  return static_cast<i128>(x.first) * y.second - static_cast<i128>(x.second) * y.first;
}

i64 parse_int(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  std::string buf(s);
  char* end = nullptr;
  const long long v = std::strtoll(buf.c_str(), &end, 10);
  if (buf.empty() || end == buf.c_str() || *end != '\0') throw Error(ErrorCode::ParseError, "bad integer '" + buf + "'");
  return v;
}

u64 multiples_of(u64 q, i64 lo, i64 hi) { return count_in_class(lo, hi, 0, q); }

}  // namespace

IntBox::IntBox(std::vector<std::pair<i64, i64>> intervals) : iv_(std::move(intervals)) {
  if (iv_.empty()) throw Error(ErrorCode::ParseError, "box needs at least one interval");
  for (const auto& [lo, hi] : iv_)
    if (lo > hi) throw Error(ErrorCode::ParseError, "interval with lo > hi");
}

IntBox IntBox::parse(std::string_view text) {
  std::vector<std::pair<i64, i64>> iv;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i != text.size() && text[i] != ',') continue;
    const auto part = text.substr(start, i - start);
    start = i + 1;
    const auto dots = part.find("..");
    if (dots == std::string_view::npos) throw Error(ErrorCode::ParseError, "interval must read lo..hi");
    iv.emplace_back(parse_int(part.substr(0, dots)), parse_int(part.substr(dots + 2)));
  }
  return IntBox(std::move(iv));
}

u64 IntBox::size() const {
  long double s = 1;
  u64 out = 1;
  for (std::size_t j = 0; j < dim(); ++j) {
    s *= static_cast<long double>(length(j));
    out *= length(j);
  }
  return s >= static_cast<long double>(std::numeric_limits<u64>::max()) ? std::numeric_limits<u64>::max() : out;
}

u64 IntBox::boundary_size() const {
  u64 inner = 1;
  for (std::size_t j = 0; j < dim(); ++j) inner *= length(j) >= 2 ? length(j) - 2 : 0;
  return size() - inner;
}

std::string IntBox::to_string() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < dim(); ++j) {
    if (j) os << ',';
    os << lo(j) << ".." << hi(j);
  }
  return os.str();
}

u64 count_in_class(i64 lo, i64 hi, u64 r, u64 m) {
  if (lo > hi) return 0;
  const i128 mm = static_cast<i128>(m);
  const i128 rr = static_cast<i128>(r % m);
  return static_cast<u64>(floor_div(static_cast<i128>(hi) - rr, mm) - floor_div(static_cast<i128>(lo) - 1 - rr, mm));
}

CountResult count_brute(const FieldCtx& ctx, const TorusMatrix& a, std::span<const u64> u, const IntBox& box, u64 cap) {
  const std::size_t k = a.cols();
  const std::size_t rows = a.rows();
  if (u.size() != k || box.dim() != k) throw Error(ErrorCode::PreconditionViolated, "dimension mismatch");
  for (u64 x : u)
    if (!ctx.is_unit(x)) throw Error(ErrorCode::BadResidue, "coset representative must be a unit");
  const u64 q = ctx.q();
  const u64 n = ctx.order();

  std::size_t last = 0;
  for (std::size_t j = 1; j < k; ++j)
    if (box.length(j) > box.length(last)) last = j;

  // Row used to solve for the last coordinate: smallest gcd(a_i,last, n).
  std::size_t gen = rows;
  u64 branch = 1;
  for (std::size_t i = 0; i < rows; ++i) {
    if (arith::mod(a.at(i, last), n) == 0) continue;
    const u64 g = arith::gcd(a.at(i, last), static_cast<i64>(n));
    if (gen == rows || g < branch) {
      gen = i;
      branch = g;
    }
  }
  long double cost = static_cast<long double>(branch);
  for (std::size_t j = 0; j < k; ++j)
    if (j != last) cost *= static_cast<long double>(box.length(j));
  if (cost > static_cast<long double>(cap)) throw Error(ErrorCode::TooLarge, "box enumeration exceeds cap");

  u64 gen_np = 1, gen_inv = 0;
  if (gen != rows) {
    gen_np = n / branch;
    gen_inv = gen_np == 1 ? 0 : arith::inv_mod(static_cast<i64>(arith::mod(a.at(gen, last), n) / branch), gen_np);
  }

  // Target: sum_j a_ij (dlog x_j - dlog u_j) = 0 (mod n) for every row.
  std::vector<u64> partial(rows, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < k; ++j)
      partial[i] = (partial[i] + n - arith::mulmod(arith::mod(a.at(i, j), n), ctx.dlog(u[j]), n)) % n;

  const i64 lo_l = box.lo(last), hi_l = box.hi(last);
  const u64 units_last = box.length(last) - multiples_of(q, lo_l, hi_l);

  auto solve_last = [&]() -> u64 {
    if (gen == rows) {
      for (u64 p : partial)
        if (p != 0) return 0;
      return units_last;
    }
    const u64 rhs = (n - partial[gen]) % n;
    if (rhs % branch != 0) return 0;
    const u64 e0 = arith::mulmod(rhs / branch, gen_inv, gen_np);
    u64 total = 0;
    for (u64 t = 0; t < branch; ++t) {
      const u64 e = e0 + t * gen_np;
      bool ok = true;
      for (std::size_t i = 0; i < rows && ok; ++i) {
        if (i == gen) continue;
        ok = (partial[i] + arith::mulmod(arith::mod(a.at(i, last), n), e, n)) % n == 0;
      }
      if (ok) total += count_in_class(lo_l, hi_l, ctx.gpow(static_cast<i64>(e)), q);
    }
    return total;
  };

  std::vector<std::size_t> order;
  for (std::size_t j = 0; j < k; ++j)
    if (j != last) order.push_back(j);

  u64 count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == order.size()) {
      count += solve_last();
      return;
    }
    const std::size_t j = order[pos];
    for (i64 x = box.lo(j); x <= box.hi(j); ++x) {
      const u64 r = arith::mod(x, q);
      if (r == 0) continue;
      const u64 d = ctx.dlog(r);
      for (std::size_t i = 0; i < rows; ++i) partial[i] = (partial[i] + arith::mulmod(arith::mod(a.at(i, j), n), d, n)) % n;
      rec(pos + 1);
      for (std::size_t i = 0; i < rows; ++i)
        partial[i] = (partial[i] + n - arith::mulmod(arith::mod(a.at(i, j), n), d, n)) % n;
    }
  };
  rec(0);

  CountResult res;
  res.count = count;
  res.normalized = static_cast<double>(count) / std::sqrt(static_cast<double>(box.size()));
  res.method = "brute";
  return res;
}

std::pair<Vec2, Vec2> reduced_basis_2d(u64 q, u64 alpha) {
  Vec2 v1{static_cast<i64>(alpha % q), 1};
  Vec2 v2{static_cast<i64>(q), 0};
  if (dot(v1, v1) > dot(v2, v2)) std::swap(v1, v2);
  for (;;) {
    const i128 n1 = dot(v1, v1);
    const i128 mu = floor_div(2 * dot(v1, v2) + n1, 2 * n1);
    v2.first -= static_cast<i64>(mu * v1.first);
    v2.second -= static_cast<i64>(mu * v1.second);
    if (dot(v2, v2) >= n1) break;
    std::swap(v1, v2);
  }
  return {v1, v2};
}

double lattice_min_2d(u64 q, u64 alpha, Norm norm) {
  const auto [b1, b2] = reduced_basis_2d(q, alpha);
  if (norm == Norm::Euclidean) return std::sqrt(static_cast<double>(dot(b1, b1)));
  // For a reduced basis |s b1 + t b2|^2 >= (s^2 + t^2 - |st|) |b1|^2, and the
  // sup norm is at least |.|/sqrt 2, so |s|, |t| <= 1 suffices.
  i64 best = std::numeric_limits<i64>::max();
  for (i64 s = -1; s <= 1; ++s)
    for (i64 t = -1; t <= 1; ++t) {
      if (s == 0 && t == 0) continue;
      const i64 x = s * b1.first + t * b2.first;
      const i64 y = s * b1.second + t * b2.second;
      best = std::min<i64>(best, std::max<i64>(std::llabs(x), std::llabs(y)));
    }
  return static_cast<double>(best);
}

u64 lattice_count_2d(u64 q, u64 alpha, i64 m_lo, i64 m_hi, i64 n_lo, i64 n_hi) {
  if (m_lo > m_hi || n_lo > n_hi) return 0;
  const auto [b1, b2] = reduced_basis_2d(q, alpha);
  const i128 det = cross(b1, b2);  // +-q

  // v = s b1 + t b2 has t = cross(b1, v) / det; t ranges over the image of the box.
  i128 cmin = 0, cmax = 0;
  bool first = true;
  for (i64 m : {m_lo, m_hi})
    for (i64 n : {n_lo, n_hi}) {
      i128 c = cross(b1, Vec2{m, n});
      if (det < 0) c = -c;
      if (first || c < cmin) cmin = c;
      if (first || c > cmax) cmax = c;
      first = false;
    }
  const i128 adet = det < 0 ? -det : det;
  const i128 t_lo = ceil_div(cmin, adet);
  const i128 t_hi = floor_div(cmax, adet);

  u64 total = 0;
  for (i128 t = t_lo; t <= t_hi; ++t) {
    const i128 px = t * b2.first;
    const i128 py = t * b2.second;
    i128 s_lo = std::numeric_limits<i64>::min();
    i128 s_hi = std::numeric_limits<i64>::max();
    bool empty = false;
    auto clamp = [&](i128 p, i64 step, i64 lo, i64 hi) {
      if (step == 0) {
        if (p < lo || p > hi) empty = true;
        return;
      }
      i128 a = lo - p, b = hi - p;
      if (step < 0) {
        std::swap(a, b);
        a = -a;
        b = -b;
        step = -step;
      }
      s_lo = std::max(s_lo, ceil_div(a, step));
      s_hi = std::min(s_hi, floor_div(b, step));
    };
    clamp(px, b1.first, m_lo, m_hi);
    clamp(py, b1.second, n_lo, n_hi);
    if (!empty && s_hi >= s_lo) total += static_cast<u64>(s_hi - s_lo + 1);
  }
  return total;
}

LinearCount count_lattice_linear(const FieldCtx& ctx, std::size_t i, std::size_t j, std::span<const u64> u,
                                 const IntBox& box) {
  const std::size_t k = box.dim();
  if (i == j || i >= k || j >= k || u.size() != k) throw Error(ErrorCode::PreconditionViolated, "bad index pair");
  const u64 q = ctx.q();
  if (!ctx.is_unit(u[i]) || !ctx.is_unit(u[j])) throw Error(ErrorCode::BadResidue, "u_i, u_j must be units");

  // u_i y_i = u_j y_j  <=>  y_i = alpha y_j with alpha = u_j / u_i.
  const u64 alpha = arith::mulmod(u[j] % q, ctx.inverse(u[i] % q), q);
  const u64 pair = lattice_count_2d(q, alpha, box.lo(i), box.hi(i), box.lo(j), box.hi(j));
  const u64 zero_pair = multiples_of(q, box.lo(i), box.hi(i)) * multiples_of(q, box.lo(j), box.hi(j));

  LinearCount res;
  res.count = pair;
  res.count_units = pair - zero_pair;
  for (std::size_t m = 0; m < k; ++m) {
    if (m == i || m == j) continue;
    res.count *= box.length(m);
    res.count_units *= box.length(m) - multiples_of(q, box.lo(m), box.hi(m));
  }
  res.lambda1 = k == 2 ? lattice_min_2d(q, alpha) : 1.0;
  res.bound = static_cast<double>(box.size()) / static_cast<double>(q) +
              std::pow(static_cast<double>(box.boundary_size()) / res.lambda1 + 1.0, static_cast<double>(k - 1));
  return res;
}

double systematic_count(i64 a, i64 bneg, double x, const Weight& v) {
  if (a < 1 || bneg < 1 || !(x > 0)) throw Error(ErrorCode::PreconditionViolated, "need a, bneg >= 1 and X > 0");
  if (a == bneg) throw Error(ErrorCode::DegenerateExponent, "a = bneg gives a + b = 0");
  const double e = static_cast<double>((a + bneg) / static_cast<i64>(arith::gcd(a, bneg)));
  const double r_max = std::floor(std::pow(x * v.support_end, 1.0 / e) * (1 + 1e-12));
  if (r_max > 1e9) throw Error(ErrorCode::TooLarge, "systematic sum too long");
  double s = 0;
  // Smallest terms first.
  for (double r = std::max(r_max, 1.0); r >= 1; r -= 1) {
    const double y = std::pow(r, e) / x;
    if (y > v.support_end) continue;
    s += std::pow(r, -e / 2) * v.fn(y);
  }
  return s / 2;
}

PierceBound pierce_bound(u64 m, u64 n, u64 q, int k) {
  if (k < 1) throw Error(ErrorCode::PreconditionViolated, "k must be >= 1");
  const double kk = k;
  const double md = static_cast<double>(m), nd = static_cast<double>(n), qd = static_cast<double>(q);
  PierceBound res;
  res.value = std::pow(md, kk / (kk + 1)) * std::pow(nd, 1 / (2 * kk)) * std::pow(std::log(qd), 1 / (2 * kk));
  res.applicable = md <= 0.5 * std::pow(qd, (kk + 1) / (2 * kk)) && nd <= qd / 4;
  return res;
}

}  // namespace tml
