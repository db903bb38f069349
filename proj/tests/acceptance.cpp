// Acceptance suite: one line per criterion, every tolerance pinned in code.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mh/mh.hpp"
#include "oracles.hpp"

using namespace mh;
using Complex = std::complex<double>;

namespace {

struct Criterion {
  int id;
  std::string title;
  double runtime_limit_s;
  std::function<bool(std::string&)> run;
};

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (detail.tellp() > 0) detail << "; ";
      detail << what;
    }
  }
};

std::string fmtg(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// --- 1: closed-form equivalence, n = 3 --------------------------------------
bool criterion_1(std::string& detail) {
  Check c;
  for (Complex s : {Complex{0.5, 0.0}, Complex{1.0, 0.0}, Complex{0.0, 2.0}, Complex{1.0, 1.0}}) {
    for (double r : {0.1, 1.0, 5.0, 20.0}) {
      const Complex got = phi_radial(3, s, r).to_complex();
      const Complex want = oracle::phi3_closed(s, r);
      const double rel = std::abs(got - want) / std::abs(want);
      c.expect(rel <= 1e-10, "s=" + fmtg(s.real()) + "+" + fmtg(s.imag()) + "i r=" + fmtg(r) +
                                 " rel=" + fmtg(rel));
    }
  }
  detail = c.detail.str();
  return c.ok;
}

// --- 2: Bessel series equivalence, n = 2 ------------------------------------
bool criterion_2(std::string& detail) {
  Check c;
  for (double r : {0.5, 2.0, 10.0}) {
    const Complex got = phi_radial(2, {0.0, 1.0}, r).to_complex();
    const Complex want = oracle::jk_series(0, {r, 0.0});
    c.expect(std::abs(got - want) <= 1e-9 * std::max(1.0, std::abs(want)),
             "r=" + fmtg(r) + " err=" + fmtg(std::abs(got - want)));
  }
  detail = c.detail.str();
  return c.ok;
}

// --- 3: asymptotic law ratio -------------------------------------------------
bool criterion_3(std::string& detail) {
  Check c;
  for (int n : {2, 3, 4, 5}) {
    for (Complex s : {Complex{1.0, 0.0}, Complex{1.0, 1.0}}) {
      double prev = std::numeric_limits<double>::infinity();
      double last = 0.0;
      for (double sr : {200.0, 500.0, 1000.0, 2000.0}) {
        const double r = sr / std::abs(s);
        const LogComplex quad = phi_radial(n, s, r);
        const LogComplex asym = phi_asymptotic(n, s, r);
        const double dev = std::abs(LogComplex::ratio(quad, asym) - Complex(1.0, 0.0));
        c.expect(dev <= prev + 1e-9, "n=" + std::to_string(n) + " |s|r=" + fmtg(sr) +
                                         " non-monotone dev=" + fmtg(dev));
        prev = dev;
        last = dev;
      }
      c.expect(last <= 1e-3,
               "n=" + std::to_string(n) + " endpoint dev=" + fmtg(last) + " > 1e-3");
    }
  }
  detail = c.detail.str();
  return c.ok;
}

// --- 4: boundedness classifier ----------------------------------------------
bool criterion_4(std::string& detail) {
  Check c;
  const std::vector<double> grid = default_boundedness_grid();
  const long samples = 100000;

  int correct = 0, total = 0;
  for (int n : {2, 3}) {
    const auto model = rank_one_model(n, n == 2 ? GroupSpec::so(2) : GroupSpec::so(3));
    for (double a : {0.0, 0.5, 1.0, 2.0}) {
      for (double b : {0.0, 0.25, -0.25, 1.0, -1.0}) {
        const auto rep = boundedness_classify(model, SpectralParam::single({a, b}), grid, 1.05,
                                              samples, split_seed(4001, total));
        const Verdict want = (b == 0.0) ? Verdict::Bounded : Verdict::Unbounded;
        ++total;
        if (rep.verdict == want) {
          ++correct;
        } else {
          c.expect(false, "rank1:" + std::to_string(n) + " lambda=" + fmtg(a) + "+" + fmtg(b) +
                              "i got " + to_string(rep.verdict));
        }
      }
    }
  }
  c.expect(correct == total, "rank-one grid " + std::to_string(correct) + "/" +
                                 std::to_string(total));

  const auto sl2 = sl_flat_model(2);
  for (double a : {0.0, 0.5, 1.0, 2.0}) {
    const auto rep = boundedness_classify(sl2, SpectralParam::real({a}), grid, 1.05, samples,
                                          split_seed(4002, static_cast<std::uint64_t>(a * 4)));
    c.expect(rep.verdict == Verdict::Bounded, "slflat:2 real lambda=" + fmtg(a));
  }
  int idx = 0;
  for (double a : {0.0, 1.0}) {
    for (double b : {0.5, -0.5, 1.0, -1.0}) {
      const auto rep = boundedness_classify(sl2, SpectralParam::single({a, b}), grid, 1.05,
                                            samples, split_seed(4003, idx++));
      c.expect(rep.verdict == Verdict::Unbounded,
               "slflat:2 lambda=" + fmtg(a) + "+" + fmtg(b) + "i");
    }
  }

  detail = c.detail.str();
  return c.ok;
}

// --- 5: positive definiteness -----------------------------------------------
bool criterion_5(std::string& detail) {
  Check c;
  const int m = 8;
  for (int n : {2, 3}) {
    const auto model = rank_one_model(n, n == 2 ? GroupSpec::so(2) : GroupSpec::so(3));

    for (double lam : {0.5, 1.0, 3.0}) {
      for (int trial = 0; trial < 20; ++trial) {
        const std::uint64_t seed = split_seed(5001, trial);
        const PointConfig cfg = (trial % 2 == 0)
                                    ? collinear_config(model, m, 0.4 + 0.05 * trial)
                                    : random_config(model, m, 1.0, seed);
        const auto g = gram_matrix(model, SpectralParam::real({lam}), cfg);
        const auto rep = gram_report(g, 1e-9 * m);
        c.expect(rep.psd && rep.min_eigenvalue >= -1e-8 * m,
                 "n=" + std::to_string(n) + " lambda=" + fmtg(lam) + " trial " +
                     std::to_string(trial) + " min_eig=" + fmtg(rep.min_eigenvalue));
      }
    }

    for (Complex lam : {Complex{0.0, 0.5}, Complex{1.0, 1.0}}) {
      for (int trial = 0; trial < 20; ++trial) {
        const auto res = bochner_test(model, SpectralParam::single(lam), 1, m,
                                      split_seed(5002, trial));
        c.expect(res.verdict == PdVerdict::NotPositiveDefinite,
                 "n=" + std::to_string(n) + " lambda=" + fmtg(lam.real()) + "+" +
                     fmtg(lam.imag()) + "i trial " + std::to_string(trial) + " got " +
                     to_string(res.verdict));
      }
    }
  }
  detail = c.detail.str();
  return c.ok;
}

// --- 6: Weyl invariance on the SL(3) flat model -------------------------------
bool criterion_6(std::string& detail) {
  Check c;
  const auto model = sl_flat_model(3);
  const SpectralParam lam = SpectralParam::real({1.0, 0.3});
  const auto orbit = model.weyl_orbit(lam);
  c.expect(orbit.size() <= 6, "orbit size " + std::to_string(orbit.size()));

  const long samples = 200000;
  Rng rng(606);
  for (int yi = 0; yi < 10; ++yi) {
    PVector y(model.dim_p);
    for (int d = 0; d < model.dim_p; ++d) y(d) = rng.gaussian();
    const auto base = psi_monte_carlo(model, lam, y, samples, split_seed(6001, yi));
    for (std::size_t oi = 0; oi < orbit.size(); ++oi) {
      const auto img = psi_monte_carlo(model, orbit[oi].param, y, samples,
                                       split_seed(6002, yi * 16 + oi));
      const double combined =
          std::sqrt(base.std_error * base.std_error + img.std_error * img.std_error);
      c.expect(std::abs(base.value - img.value) <= 3.0 * combined,
               "Y#" + std::to_string(yi) + " image#" + std::to_string(oi) + " |diff|=" +
                   fmtg(std::abs(base.value - img.value)) + " 3se=" + fmtg(3.0 * combined));
    }
  }
  detail = c.detail.str();
  return c.ok;
}

// --- 7: eigen-equation residuals ----------------------------------------------
bool criterion_7(std::string& detail) {
  Check c;
  int done = 0;
  for (int i = 0; i < 50; ++i) {
    const int n = (i % 2 == 0) ? 2 : 3;
    const double lambda = (i % 4 < 2) ? 1.0 : 2.0;
    const std::uint64_t seed = split_seed(7001, i);
    EigenFunctionHandle h{lambda, make_random_density(n, seed)};
    Rng rng(split_seed(seed, 1));
    Eigen::VectorXd x(n);
    for (int d = 0; d < n; ++d) x(d) = 1.2 * rng.gaussian();

    const std::vector<double> steps{1e-2, 5e-3, 2.5e-3};
    std::vector<double> residuals;
    for (double hstep : steps) residuals.push_back(laplacian_residual(h, x, hstep));
    const double slope = std::log(residuals.front() / residuals.back()) /
                         std::log(steps.front() / steps.back());
    c.expect(std::abs(slope - 2.0) <= 0.2,
             "triple " + std::to_string(i) + " slope " + fmtg(slope));

    const Complex f = synthesize(h, x);
    if (std::abs(f) >= 0.1) {
      const double rel = laplacian_residual(h, x, 1e-3) / std::abs(lambda * lambda * f);
      c.expect(rel <= 1e-4, "triple " + std::to_string(i) + " rel residual " + fmtg(rel));
    }
    ++done;
  }
  c.expect(done == 50, "ran " + std::to_string(done) + "/50");
  detail = c.detail.str();
  return c.ok;
}

// --- 8: Jacobi-Anger / K-type projections --------------------------------------
bool criterion_8(std::string& detail) {
  Check c;
  const double lambda = 1.0;

  // projections of a point-mass plane wave against i^k J_k e^{ik(arg x - phi0)}
  SphereDensity d = make_circle_density();
  const int j0_node = 11;
  const double phi0 = 2.0 * std::numbers::pi * j0_node / d.size();
  d.set_point_mass(Eigen::Vector3d(std::cos(phi0), std::sin(phi0), 0.0));
  EigenFunctionHandle point{lambda, d};

  for (double r : {0.5, 1.0, 3.0}) {
    const double alpha = 0.7;
    Eigen::VectorXd x(2);
    x << r * std::cos(alpha), r * std::sin(alpha);
    for (int k = -8; k <= 8; ++k) {
      const Complex got = ktype_project(point, k, x);
      Complex ik{1.0, 0.0};
      for (int q = 0; q < ((k % 4) + 4) % 4; ++q) ik *= Complex(0.0, 1.0);
      const Complex want = ik * oracle::jk_series(k, {lambda * r, 0.0}) *
                           std::exp(Complex(0.0, k * (alpha - phi0)));
      c.expect(std::abs(got - want) <= 1e-8,
               "k=" + std::to_string(k) + " r=" + fmtg(r) + " err=" + fmtg(std::abs(got - want)));
    }
  }

  // partial sums rebuild the synthesis
  EigenFunctionHandle h{lambda, make_random_density(2, 8001)};
  for (double r : {0.5, 1.0, 3.0}) {
    Eigen::VectorXd x(2);
    x << r * std::cos(-0.3), r * std::sin(-0.3);
    const int kmax = static_cast<int>(std::ceil(lambda * r)) + 20;
    Complex sum{0.0, 0.0};
    for (int k = -kmax; k <= kmax; ++k) sum += ktype_project(h, k, x);
    const Complex direct = synthesize(h, x);
    c.expect(std::abs(sum - direct) <= 1e-8,
             "reconstruction r=" + fmtg(r) + " err=" + fmtg(std::abs(sum - direct)));
  }
  detail = c.detail.str();
  return c.ok;
}

// --- 9: single-radius inversion -----------------------------------------------
bool criterion_9(std::string& detail) {
  Check c;
  const double lambda = 1.0, r = 1.0;
  const int max_k = 8;
  EigenFunctionHandle h{lambda, make_random_density(2, 9001)};

  const auto got = analyze(sample_circle(h, r, 256), lambda, r, max_k);
  const auto want = density_fourier_coeffs(h.density, max_k);
  for (int k = -max_k; k <= max_k; ++k) {
    c.expect(std::abs(got[k + max_k] - want[k + max_k]) <= 1e-7,
             "k=" + std::to_string(k) + " err=" + fmtg(std::abs(got[k + max_k] - want[k + max_k])));
  }

  // Bessel-zero guard: r at the first zero of J_0 must be rejected, naming k=0
  const double j01 = 2.404825557695773;
  bool rejected = false;
  try {
    analyze(sample_circle(h, j01 / lambda, 256), lambda, j01 / lambda, max_k);
  } catch (const bessel_zero_error& e) {
    rejected = (e.k == 0);
  }
  c.expect(rejected, "Bessel-zero radius was not rejected");
  detail = c.detail.str();
  return c.ok;
}

// --- 10: classification table ---------------------------------------------------
bool criterion_10(std::string& detail) {
  Check c;
  auto find = [](const std::vector<ClassificationEntry>& es, const std::string& k0)
      -> const ClassificationEntry* {
    for (const auto& e : es) {
      if (e.k0 == k0) return &e;
    }
    return nullptr;
  };
  auto has_ext = [](const ClassificationEntry* e, const std::string& x) {
    return e != nullptr &&
           std::find(e->extensions.begin(), e->extensions.end(), x) != e->extensions.end();
  };

  for (int n = 2; n <= 16; ++n) {
    const auto es = transitive_groups(n);
    c.expect(find(es, "SO(" + std::to_string(n) + ")") != nullptr,
             "n=" + std::to_string(n) + " misses SO(n)");
  }

  const auto e7 = transitive_groups(7);
  c.expect(has_ext(find(e7, "G2"), "trivial") && has_ext(find(e7, "G2"), "-I"),
           "n=7 G2 extensions");

  const auto e8 = transitive_groups(8);
  c.expect(find(e8, "Spin(7)") != nullptr &&
               find(e8, "Spin(7)")->extensions == std::vector<std::string>{"trivial"},
           "n=8 Spin(7)");

  const auto e16 = transitive_groups(16);
  c.expect(find(e16, "Spin(9)") != nullptr &&
               find(e16, "Spin(9)")->extensions == std::vector<std::string>{"trivial"},
           "n=16 Spin(9)");

  const auto e4 = transitive_groups(4);
  c.expect(has_ext(find(e4, "SU(2)"), "Z_l") && has_ext(find(e4, "SU(2)"), "D_l"), "n=4 SU(2)");
  c.expect(find(e4, "U(2)") != nullptr, "n=4 U(2)");
  const auto* sp1 = find(e4, "Sp(1)");
  c.expect(has_ext(sp1, "Z_l") && has_ext(sp1, "D*_l") && has_ext(sp1, "T*") &&
               has_ext(sp1, "O*") && has_ext(sp1, "I*"),
           "n=4 Sp(1) binary polyhedral families");
  c.expect(has_ext(find(e4, "Sp(1)U(1)"), "trivial") && has_ext(find(e4, "Sp(1)U(1)"), "beta"),
           "n=4 Sp(1)U(1) variants");
  c.expect(find(e4, "Sp(1)Sp(1)") != nullptr, "n=4 Sp(1)Sp(1)");

  detail = c.detail.str();
  return c.ok;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria{
      {1, "closed-form equivalence (n=3, sinh)", 1.0, criterion_1},
      {2, "Bessel series equivalence (n=2)", 1.0, criterion_2},
      {3, "asymptotic law: monotone ratio to 1e-3", 10.0, criterion_3},
      {4, "boundedness classifier on the lambda grid", 60.0, criterion_4},
      {5, "positive definiteness: PSD Grams / NotPD verdicts", 30.0, criterion_5},
      {6, "Weyl invariance of psi (SL(3) flat model)", 60.0, criterion_6},
      {7, "eigen-equation stencil residuals", 30.0, criterion_7},
      {8, "Jacobi-Anger K-type projections", 10.0, criterion_8},
      {9, "single-radius inversion round trip", 5.0, criterion_9},
      {10, "classification table n=2..16", 1.0, criterion_10},
  };

  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);

  int failures = 0;
  for (const auto& cr : criteria) {
    if (only != 0 && cr.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = cr.run(detail);
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > cr.runtime_limit_s) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + std::string("runtime ") + fmtg(secs) +
                "s exceeds " + fmtg(cr.runtime_limit_s) + "s";
    }
    std::printf("[%s] %2d. %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", cr.id, cr.title.c_str(), secs,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
  }
  return failures;
}
