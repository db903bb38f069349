// Measures the quadrature/asymptotic crossover R*(n): the smallest |s| r at
// which the two evaluation routes agree to agree_tol, per dimension. Output
// goes to constants/crossover.json; the same numbers are mirrored as the
// built-in defaults in mh/spherical.hpp.
//
//   mh_calibrate [--tol 1e-6] [--n-max 8] [--out path]

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>

#include "mh/log_complex.hpp"
#include "mh/spherical.hpp"

namespace {

double disagreement(int n, double sr) {
  const std::complex<double> s{1.0, 0.0};
  const mh::LogComplex quad = mh::phi_radial(n, s, sr);
  const mh::LogComplex asym = mh::phi_asymptotic(n, s, sr);
  return std::abs(mh::LogComplex::ratio(quad, asym) - std::complex<double>(1.0, 0.0));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crossover calibration"};
  double tol = 1e-6;
  int n_max = 8;
  std::string out = "constants/crossover.json";
  app.add_option("--tol", tol);
  app.add_option("--n-max", n_max)->check(CLI::Range(2, 16));
  app.add_option("--out", out);
  CLI11_PARSE(app, argc, argv);

  nlohmann::ordered_json rstar;
  for (int n = 2; n <= n_max; ++n) {
    double lo = 1.0, hi = 1.0;
    // bracket: grow hi until the two routes agree
    while (disagreement(n, hi) > tol && hi < 1e8) hi *= 2.0;
    if (disagreement(n, lo) <= tol) {
      hi = lo;
    } else {
      for (int it = 0; it < 60 && hi / lo > 1.01; ++it) {
        const double mid = std::sqrt(lo * hi);
        (disagreement(n, mid) <= tol ? hi : lo) = mid;
      }
    }
    // round up with a small safety factor
    const double r = 1.05 * hi;
    rstar[std::to_string(n)] = r;
    std::cerr << "n=" << n << "  R*=" << r << "\n";
  }

  nlohmann::ordered_json doc;
  doc["version"] = 1;
  doc["agree_tol"] = tol;
  doc["r_star"] = rstar;

  std::ofstream f(out);
  if (!f) {
    std::cerr << "cannot write " << out << "\n";
    return 1;
  }
  f << doc.dump(2) << "\n";
  std::cout << doc.dump(2) << "\n";
  return 0;
}
