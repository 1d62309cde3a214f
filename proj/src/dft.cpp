#include "tml/dft.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace tml::dft {

namespace {

// exp(sign * 2 pi i num/den) with the fraction folded into (-1/2, 1/2].
cplx twiddle(std::uint64_t num, std::uint64_t den, int sign) {
  num %= den;
  double frac = static_cast<double>(num) / static_cast<double>(den);
  if (2 * num > den) frac = -static_cast<double>(den - num) / static_cast<double>(den);
  return std::polar(1.0, sign * 2.0 * std::numbers::pi * frac);
}

}  // namespace

void radix2(std::span<cplx> x, int sign) {
  const std::size_t n = x.size();
  if (n <= 1) return;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1U;
    for (; j & bit; bit >>= 1U) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1U) {
    const std::size_t half = len / 2;
    // Twiddles straight from the table of exact angles, no recurrence drift.
    std::vector<cplx> w(half);
    for (std::size_t k = 0; k < half; ++k) w[k] = twiddle(k, len, sign);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const cplx u = x[i + k];
        const cplx v = x[i + k + half] * w[k];
        x[i + k] = u + v;
        x[i + k + half] = u - v;
      }
    }
  }
}

std::vector<cplx> naive(std::span<const cplx> x, int sign) {
  const std::size_t n = x.size();
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx acc = 0;
    for (std::size_t k = 0; k < n; ++k) acc += x[k] * twiddle(static_cast<std::uint64_t>(j) * k % n, n, sign);
    out[j] = acc;
  }
  return out;
}

std::vector<cplx> transform(std::span<const cplx> x, int sign) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  if (n <= 16) return naive(x, sign);
  if (std::has_single_bit(n)) {
    std::vector<cplx> out(x.begin(), x.end());
    radix2(out, sign);
    return out;
  }

  // jk = (j^2 + k^2 - (j-k)^2) / 2, so the transform is a convolution with
  // the chirp c[m] = exp(-sign * pi i m^2 / n). m^2 is reduced mod 2n in
  // integers to keep the chirp phases exact.
  const std::uint64_t two_n = 2 * static_cast<std::uint64_t>(n);
  std::vector<cplx> chirp(n);
  for (std::size_t m = 0; m < n; ++m) {
    const auto m2 = static_cast<std::uint64_t>(static_cast<unsigned __int128>(m) * m % two_n);
    chirp[m] = twiddle(m2, two_n, sign);  // exp(sign * pi i m^2 / n)
  }

  const std::size_t len = std::bit_ceil(2 * n - 1);
  std::vector<cplx> a(len, 0.0), b(len, 0.0);
  for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
  b[0] = std::conj(chirp[0]);
  for (std::size_t m = 1; m < n; ++m) {
    b[m] = std::conj(chirp[m]);
    b[len - m] = std::conj(chirp[m]);
  }
  radix2(a, -1);
  radix2(b, -1);
  for (std::size_t i = 0; i < len; ++i) a[i] *= b[i];
  radix2(a, +1);

  const double scale = 1.0 / static_cast<double>(len);
  std::vector<cplx> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = a[j] * scale * chirp[j];
  return out;
}

}  // namespace tml::dft
