#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mh {

// Gamma function for positive real arguments, Lanczos approximation
// (g = 7, 9 coefficients; relative error below ~1e-14 on the real axis).
inline double lanczos_gamma(double x) {
  static constexpr std::array<double, 9> coef = {
      0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
      771.32342877765313,       -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

  if (!(x > 0.0)) throw std::domain_error("lanczos_gamma: requires x > 0");
  if (x < 0.5) {
    // reflection formula
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * lanczos_gamma(1.0 - x));
  }
  x -= 1.0;
  double a = coef[0];
  const double t = x + 7.5;
  for (int i = 1; i < 9; ++i) a += coef[i] / (x + i);
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * a;
}

// Gamma(k/2) for integer k >= 1 via the exact recursion from Gamma(1/2) = sqrt(pi)
// and Gamma(1) = 1. Exact up to double rounding; the independent route used to
// cross-check the Lanczos values at half-integers.
inline double gamma_half_int(int k) {
  if (k < 1) throw std::domain_error("gamma_half_int: requires k >= 1");
  double g = (k % 2 == 0) ? 1.0 : std::sqrt(std::numbers::pi);
  // Gamma(x+1) = x Gamma(x), climbing from 1 or 1/2 up to k/2
  for (int j = k % 2 == 0 ? 2 : 1; j < k; j += 2) {
    g *= 0.5 * j;
  }
  return g;
}

}  // namespace mh
