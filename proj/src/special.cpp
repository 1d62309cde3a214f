#include "tml/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "tml/error.hpp"

namespace tml {

namespace {

constexpr int kDirectTerms = 30;

// B_2, B_4, ..., B_16 divided by (2k)!.
constexpr std::array<double, 8> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
};

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
};
constexpr double kLanczosG = 7.0;

bool near_nonpositive_integer(cplx z) {
  return z.real() <= 0.5 && std::abs(z.imag()) < 1e-14 && std::abs(z.real() - std::round(z.real())) < 1e-14;
}

}  // namespace

double hurwitz_zeta(double s, double x) {
  if (!(x > 0)) throw Error(ErrorCode::DomainError, "Hurwitz zeta needs x > 0");
  if (s == 1.0) throw Error(ErrorCode::PoleError, "Hurwitz zeta has a pole at s = 1");

  double head = 0;
  for (int k = kDirectTerms - 1; k >= 0; --k) head += std::pow(k + x, -s);

  const double a = kDirectTerms + x;
  const double a_s = std::pow(a, -s);
  double tail = a * a_s / (s - 1) + 0.5 * a_s;
  // sum_k B_2k/(2k)! * s(s+1)...(s+2k-2) * a^{-s-2k+1}
  double rising = s;
  double power = a_s / a;
  for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
    tail += kBernoulliOverFactorial[k] * rising * power;
    const double m = 2.0 * static_cast<double>(k) + 1.0;
    rising *= (s + m) * (s + m + 1);
    power /= a * a;
  }
  return head + tail;
}

double hurwitz_zeta_half(double x) {
  if (!(x > 0) || x > 1) throw Error(ErrorCode::DomainError, "zeta(1/2, x) needs 0 < x <= 1");
  double head = 0;
  for (int k = kDirectTerms - 1; k >= 0; --k) head += 1.0 / std::sqrt(k + x);

  const double a = kDirectTerms + x;
  const double ra = 1.0 / std::sqrt(a);
  double tail = -2.0 * a * ra + 0.5 * ra;
  double rising = 0.5;
  double power = ra / a;
  for (std::size_t k = 0; k < 4; ++k) {  // through B_8
    tail += kBernoulliOverFactorial[k] * rising * power;
    const double m = 2.0 * static_cast<double>(k) + 1.0;
    rising *= (0.5 + m) * (0.5 + m + 1);
    power /= a * a;
  }
  return head + tail;
}

double zeta(double s) { return hurwitz_zeta(s, 1.0); }

cplx log_gamma(cplx z) {
  if (near_nonpositive_integer(z)) throw Error(ErrorCode::PoleError, "Gamma has a pole here");
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1-z) = pi / sin(pi z)
    return std::log(std::numbers::pi) - std::log(std::sin(std::numbers::pi * z)) - log_gamma(1.0 - z);
  }
  z -= 1.0;
  cplx acc = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) acc += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(acc);
}

cplx gamma(cplx z) {
  if (near_nonpositive_integer(z)) throw Error(ErrorCode::PoleError, "Gamma has a pole here");
  if (z.real() < 0.5) return std::numbers::pi / (std::sin(std::numbers::pi * z) * gamma(1.0 - z));
  return std::exp(log_gamma(z));
}

double digamma(double x) {
  if (x <= 0 && x == std::round(x)) throw Error(ErrorCode::PoleError, "digamma has a pole here");
  if (x < 0) return digamma(1 - x) - std::numbers::pi / std::tan(std::numbers::pi * x);
  double acc = 0;
  while (x < 12) {
    acc -= 1 / x;
    x += 1;
  }
  const double x2 = 1 / (x * x);
  // B_2k / (2k) for k = 1..7
  const double series =
      x2 * (1.0 / 12 - x2 * (1.0 / 120 - x2 * (1.0 / 252 - x2 * (1.0 / 240 - x2 * (1.0 / 132 - x2 * (691.0 / 32760 - x2 / 12))))));
  return acc + std::log(x) - 0.5 / x - series;
}

}  // namespace tml
