#pragma once

#include <complex>
#include <span>
#include <vector>

namespace tml::dft {

using cplx = std::complex<double>;

// Unnormalized discrete Fourier transform of arbitrary length n:
//   out[j] = sum_k x[k] * exp(sign * 2 pi i j k / n),  sign = +1 or -1.
// Powers of two run an iterative radix-2 transform; every other length goes
// through Bluestein's chirp-z reduction to a power-of-two convolution.
std::vector<cplx> transform(std::span<const cplx> x, int sign);

// O(n^2) reference used by the tests and for tiny lengths.
std::vector<cplx> naive(std::span<const cplx> x, int sign);

// In-place radix-2 transform; x.size() must be a power of two.
void radix2(std::span<cplx> x, int sign);

}  // namespace tml::dft
