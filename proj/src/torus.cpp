#include "tml/torus.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <sstream>

#include "tml/error.hpp"

namespace tml {

namespace {

using Matrix = std::vector<std::vector<std::int64_t>>;

std::int64_t parse_int(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty integer field");
  std::string buf(s);
  char* end = nullptr;
  const long long v = std::strtoll(buf.c_str(), &end, 10);
  if (end == buf.c_str() || *end != '\0') throw Error(ErrorCode::ParseError, "bad integer '" + buf + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

std::size_t integer_rank(const Matrix& m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size();
  const std::size_t cols = m.front().size();
  std::vector<std::vector<__int128>> a(rows, std::vector<__int128>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m[i][j];

  // Bareiss: every intermediate entry is a minor of the input, so the
  // divisions below are exact.
  __int128 prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
      }
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

std::vector<std::int64_t> smith_invariants(Matrix m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m.front().size();
  std::vector<std::int64_t> out;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    for (;;) {
      // Smallest non-zero entry of the trailing block becomes the pivot.
      std::size_t pi = rows, pj = cols;
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (m[i][j] != 0 && std::llabs(m[i][j]) < best) {
            best = std::llabs(m[i][j]);
            pi = i;
            pj = j;
          }
      if (pi == rows) return out;
      std::swap(m[t], m[pi]);
      for (auto& row : m) std::swap(row[t], row[pj]);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const std::int64_t f = m[i][t] / m[t][t];
        if (f != 0)
          for (std::size_t j = t; j < cols; ++j) m[i][j] -= f * m[t][j];
        if (m[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const std::int64_t f = m[t][j] / m[t][t];
        if (f != 0)
          for (std::size_t i = t; i < rows; ++i) m[i][j] -= f * m[i][t];
        if (m[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the rest of the block; otherwise fold the
      // offending row in and go again.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
            divides = false;
            break;
          }
      if (divides) break;
    }
    out.push_back(std::llabs(m[t][t]));
  }
  return out;
}

TorusMatrix::TorusMatrix(Matrix m) : entries_(std::move(m)) {
  if (entries_.empty() || entries_.front().empty())
    throw Error(ErrorCode::ParseError, "matrix needs at least one row and one column");
  for (const auto& r : entries_)
    if (r.size() != entries_.front().size()) throw Error(ErrorCode::ParseError, "ragged matrix rows");

  rank_ = integer_rank(entries_);
  invariants_ = smith_invariants(entries_);
  connected_ = std::all_of(invariants_.begin(), invariants_.end(), [](std::int64_t d) { return d == 1; });

  affine_ = true;
  for (std::size_t j = 0; j < cols() && affine_; ++j) {
    bool positive = false;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (entries_[i][j] < 0) affine_ = false;
      if (entries_[i][j] > 0) positive = true;
    }
    if (!positive) affine_ = false;
  }
}

TorusMatrix TorusMatrix::parse(std::string_view text) {
  Matrix rows;
  for (auto row : split(text, ';')) {
    std::vector<std::int64_t> r;
    for (auto field : split(row, ',')) r.push_back(parse_int(field));
    rows.push_back(std::move(r));
  }
  return TorusMatrix(std::move(rows));
}

std::string TorusMatrix::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows(); ++i) {
    if (i) os << ';';
    for (std::size_t j = 0; j < cols(); ++j) {
      if (j) os << ',';
      os << entries_[i][j];
    }
  }
  return os.str();
}

void for_each_subgroup_exponent(const FieldCtx& ctx, const TorusMatrix& a, std::uint64_t cap,
                                const std::function<void(std::span<const std::uint64_t>)>& visit) {
  const std::uint64_t n = ctx.order();
  const std::size_t k = a.cols();
  const std::size_t r = a.rows();
  const std::size_t last = k - 1;

  // Cost: n^(k-1) outer tuples times the candidates for the last coordinate.
  bool last_free = true;
  std::uint64_t last_branch = 1;
  for (std::size_t i = 0; i < r; ++i) {
    if (arith::mod(a.at(i, last), n) != 0) {
      last_free = false;
      last_branch = std::max(last_branch, arith::gcd(a.at(i, last), static_cast<std::int64_t>(n)));
    }
  }
  if (last_free) last_branch = n;
  long double cost = static_cast<long double>(last_branch);
  for (std::size_t j = 0; j < last; ++j) cost *= static_cast<long double>(n);
  if (cost > static_cast<long double>(cap)) throw Error(ErrorCode::TooLarge, "subgroup enumeration exceeds cap");

  std::vector<std::uint64_t> e(k, 0);
  std::vector<std::int64_t> partial(r, 0);
  // Pick the row with the smallest branching to generate candidates.
  std::size_t gen_row = r;
  for (std::size_t i = 0; i < r; ++i) {
    if (arith::mod(a.at(i, last), n) == 0) continue;
    if (gen_row == r || arith::gcd(a.at(i, last), static_cast<std::int64_t>(n)) <
                            arith::gcd(a.at(gen_row, last), static_cast<std::int64_t>(n)))
      gen_row = i;
  }

  auto finish = [&]() {
    std::vector<std::uint64_t> candidates;
    if (gen_row == r) {
      for (std::size_t i = 0; i < r; ++i)
        if (arith::mod(partial[i], n) != 0) return;
      candidates.resize(n);
      std::iota(candidates.begin(), candidates.end(), std::uint64_t{0});
    } else {
      candidates = arith::solve_linear(a.at(gen_row, last), -partial[gen_row], n);
    }
    for (std::uint64_t c : candidates) {
      bool ok = true;
      for (std::size_t i = 0; i < r && ok; ++i) {
        const auto s = static_cast<__int128>(partial[i]) + static_cast<__int128>(a.at(i, last)) * c;
        ok = (s % static_cast<__int128>(n)) == 0;
      }
      if (!ok) continue;
      e[last] = c;
      visit(e);
    }
  };

  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == last) {
      finish();
      return;
    }
    for (std::uint64_t v = 0; v < n; ++v) {
      e[j] = v;
      for (std::size_t i = 0; i < r; ++i)
        partial[i] = static_cast<std::int64_t>(arith::mod(partial[i] + a.at(i, j) * static_cast<std::int64_t>(v), n));
      rec(j + 1);
      for (std::size_t i = 0; i < r; ++i)
        partial[i] = static_cast<std::int64_t>(arith::mod(partial[i] - a.at(i, j) * static_cast<std::int64_t>(v), n));
    }
  };
  rec(0);
}

std::vector<std::vector<std::uint64_t>> subgroup_points(const FieldCtx& ctx, const TorusMatrix& a,
                                                        std::uint64_t cap) {
  std::vector<std::vector<std::uint64_t>> out;
  for_each_subgroup_exponent(ctx, a, cap, [&](std::span<const std::uint64_t> e) {
    std::vector<std::uint64_t> x(e.size());
    for (std::size_t j = 0; j < e.size(); ++j) x[j] = ctx.gpow(static_cast<std::int64_t>(e[j]));
    out.push_back(std::move(x));
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t subgroup_order(const FieldCtx& ctx, const TorusMatrix& a) {
  const std::uint64_t n = ctx.order();
  std::uint64_t order = 1;
  for (std::size_t i = a.rank(); i < a.cols(); ++i) order *= n;
  for (std::int64_t d : a.invariant_factors()) order *= arith::gcd(d, static_cast<std::int64_t>(n));
  return order;
}

}  // namespace tml
