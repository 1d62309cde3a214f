#pragma once

#include <complex>

namespace tml {

using cplx = std::complex<double>;

/// zeta(1/2) to double precision.
inline constexpr double kZetaHalf = -1.4603545088095868128894991525;

/// Hurwitz zeta(s, x) for real s != 1 and x > 0 by Euler-Maclaurin with 30
/// direct terms and Bernoulli corrections through B_16. Throws
/// Error{DomainError} for x <= 0 and Error{PoleError} at s = 1.
double hurwitz_zeta(double s, double x);

/// zeta(1/2, x) for 0 < x <= 1 (absolute error below 1e-13 on that range);
/// Error{DomainError} outside it.
double hurwitz_zeta_half(double x);

/// Riemann zeta(s) for real s != 1.
double zeta(double s);

/// Gamma and log Gamma on C (Lanczos, g = 7, nine terms, with reflection).
/// Error{PoleError} at non-positive integers. log_gamma is a logarithm of
/// Gamma, not necessarily the principal branch continuation.
cplx gamma(cplx z);
cplx log_gamma(cplx z);

/// psi(x) = Gamma'(x)/Gamma(x) for real x not a non-positive integer.
double digamma(double x);

}  // namespace tml
