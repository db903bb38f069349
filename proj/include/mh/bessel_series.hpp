#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace mh {

// Bessel function of integer order by the ascending power series
//   J_k(z) = sum_j (-1)^j (z/2)^{2j+k} / (j! (j+k)!),   J_{-k} = (-1)^k J_k.
// Intended for moderate |z| (alternating-series cancellation costs roughly
// e^{|z|} * eps in absolute terms, so |z| <~ 25 keeps ~1e-9 accuracy).
inline std::complex<double> bessel_jk_series(int k, std::complex<double> z) {
  const int ka = std::abs(k);
  const double sign = (k < 0 && ka % 2 == 1) ? -1.0 : 1.0;

  const std::complex<double> half = 0.5 * z;
  // first term: (z/2)^ka / ka!
  std::complex<double> term{1.0, 0.0};
  for (int j = 1; j <= ka; ++j) term *= half / static_cast<double>(j);

  std::complex<double> sum = term;
  const std::complex<double> h2 = half * half;
  for (int j = 1; j < 400; ++j) {
    term *= -h2 / (static_cast<double>(j) * (j + ka));
    sum += term;
    if (std::abs(term) <= 1e-18 * (std::abs(sum) + 1e-300) && j > std::abs(half)) break;
  }
  return sign * sum;
}

inline std::complex<double> bessel_j0_series(std::complex<double> z) {
  return bessel_jk_series(0, z);
}

}  // namespace mh
