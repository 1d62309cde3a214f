#include "tml/chars.hpp"

#include <algorithm>

#include "tml/dft.hpp"
#include "tml/error.hpp"

namespace tml {

cplx Character::eval(std::uint64_t x) const {
  if (!ctx_->is_unit(x)) return 0.0;
  const auto phase = static_cast<unsigned __int128>(j_) * ctx_->dlog(x) % ctx_->order();
  return ctx_->e_order(static_cast<std::int64_t>(phase));
}

Character Character::power(std::int64_t a) const {
  const std::uint64_t n = ctx_->order();
  const auto idx = static_cast<unsigned __int128>(j_) * arith::mod(a, n) % n;
  return Character(*ctx_, static_cast<std::int64_t>(idx));
}

std::vector<cplx> character_transform(const FieldCtx& ctx, std::span<const cplx> by_dlog) {
  if (by_dlog.size() != ctx.order())
    throw Error(ErrorCode::PreconditionViolated, "character transform needs q-1 samples");
  return dft::transform(by_dlog, +1);
}

std::vector<std::vector<std::uint64_t>> subgroup_perp(const FieldCtx& ctx, const TorusMatrix& a,
                                                      std::uint64_t cap) {
  const std::uint64_t n = ctx.order();
  const std::size_t k = a.cols();

  std::vector<std::vector<std::uint64_t>> points;
  for_each_subgroup_exponent(ctx, a, cap, [&](std::span<const std::uint64_t> e) {
    points.emplace_back(e.begin(), e.end());
  });

  long double cost = static_cast<long double>(points.size());
  for (std::size_t j = 0; j < k; ++j) cost *= static_cast<long double>(n);
  if (cost > static_cast<long double>(cap)) throw Error(ErrorCode::TooLarge, "character enumeration exceeds cap");

  // chi_J(g^E) = e(J.E/(q-1)); the tuple is in H_A^perp iff J.E = 0 mod (q-1)
  // for every exponent vector E of H_A.
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> idx(k, 0);
  for (;;) {
    bool ok = true;
    for (const auto& e : points) {
      unsigned __int128 s = 0;
      for (std::size_t j = 0; j < k; ++j) s += static_cast<unsigned __int128>(idx[j]) * e[j];
      if (s % n != 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(idx);

    std::size_t pos = 0;
    while (pos < k && ++idx[pos] == n) idx[pos++] = 0;
    if (pos == k) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tml
