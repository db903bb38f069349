#pragma once

// Test-side oracles, independent of the library's evaluation paths: direct
// trapezoid quadratures, closed forms, and reference samplers. Anything a
// library routine computes one way is checked here by a different route.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "mh/rng.hpp"

namespace oracle {

// (1/2pi) int_0^{2pi} e^{i z cos(theta)} e^{-i k theta} dtheta = i^k J_k(z),
// plain trapezoid rule; spectrally accurate once points > 2(|z| + |k|) + 30.
inline std::complex<double> bessel_quadrature(int k, std::complex<double> z, int points = 0) {
  if (points == 0) {
    points = 2 * (static_cast<int>(std::ceil(std::abs(z))) + std::abs(k)) + 64;
  }
  std::complex<double> sum{0.0, 0.0};
  const std::complex<double> i{0.0, 1.0};
  for (int j = 0; j < points; ++j) {
    const double th = 2.0 * std::numbers::pi * j / points;
    sum += std::exp(i * z * std::cos(th)) * std::exp(-i * static_cast<double>(k) * th);
  }
  std::complex<double> ik{1.0, 0.0};
  for (int j = 0; j < ((k % 4) + 4) % 4; ++j) ik *= i;
  return sum / static_cast<double>(points) / ik;  // divide out i^k to return J_k
}

// J0 by quadrature (real z shortcut).
inline double j0_quadrature(double z) { return bessel_quadrature(0, {z, 0.0}).real(); }

// J_k by the ascending series with explicit truncation control. Written out
// here independently of the library header.
inline std::complex<double> jk_series(int k, std::complex<double> z) {
  const int ka = std::abs(k);
  const double sign = (k < 0 && ka % 2 == 1) ? -1.0 : 1.0;
  const std::complex<double> half = 0.5 * z;
  std::complex<double> term{1.0, 0.0};
  for (int j = 1; j <= ka; ++j) term *= half / static_cast<double>(j);
  std::complex<double> sum = term;
  for (int j = 1; j < 300; ++j) {
    term *= -(half * half) / (static_cast<double>(j) * (j + ka));
    sum += term;
    if (std::abs(term) < 1e-20 * (1.0 + std::abs(sum)) && j > std::abs(half)) break;
  }
  return sign * sum;
}

// Uniform point on S^{n-1} via normalized Gaussians.
inline Eigen::VectorXd uniform_sphere(mh::Rng& rng, int n) {
  Eigen::VectorXd v(n);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < n; ++i) v(i) = rng.gaussian();
    norm2 = v.squaredNorm();
  } while (norm2 < 1e-12);
  return v / std::sqrt(norm2);
}

// Haar on SO(2) directly: rotation by a uniform angle.
inline Eigen::Matrix2d so2_uniform(mh::Rng& rng) {
  const double th = rng.uniform(0.0, 2.0 * std::numbers::pi);
  Eigen::Matrix2d m;
  m << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  return m;
}

// phi(r, s) for n = 3 in closed form: sinh(s r)/(s r), safe for moderate |Re s| r.
inline std::complex<double> phi3_closed(std::complex<double> s, double r) {
  if (r == 0.0) return {1.0, 0.0};
  const std::complex<double> z = s * r;
  if (std::abs(z) < 1e-8) return 1.0 + z * z / 6.0;
  return std::sinh(z) / z;
}

}  // namespace oracle
