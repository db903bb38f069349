#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mh/gamma.hpp"
#include "mh/log_complex.hpp"
#include "mh/motion_model.hpp"
#include "mh/quadrature.hpp"
#include "mh/rng.hpp"

namespace mh {

// ---------------------------------------------------------------------------
// Monte Carlo spherical function psi_lambda(Y) = int_K e^{i lambda(Ad(k) Y)} dk
// ---------------------------------------------------------------------------

struct MCEstimate {
  std::complex<double> value{0.0, 0.0};
  double std_error = 0.0;  // sample std of the integrand / sqrt(samples), re/im combined
  long samples = 0;
};

inline MCEstimate psi_monte_carlo(const MotionModel& model, const SpectralParam& lambda,
                                  const PVector& y, long samples, std::uint64_t seed) {
  if (samples < 2) throw std::domain_error("psi_monte_carlo: samples >= 2 required");

  HaarSampler sampler(model.group, seed);
  double sum_re = 0.0, sum_im = 0.0, sum_re2 = 0.0, sum_im2 = 0.0;
  for (long i = 0; i < samples; ++i) {
    const GroupElement k = sampler.next();
    const std::complex<double> p = model.pair(lambda, model.act(k.matrix, y));
    // e^{i p}; |.| = e^{-Im p}
    const double mod = std::exp(-p.imag());
    const double re = mod * std::cos(p.real());
    const double im = mod * std::sin(p.real());
    sum_re += re;
    sum_im += im;
    sum_re2 += re * re;
    sum_im2 += im * im;
  }
  const double n = static_cast<double>(samples);
  MCEstimate est;
  est.value = {sum_re / n, sum_im / n};
  est.samples = samples;
  const double var_re = std::max(0.0, (sum_re2 - sum_re * sum_re / n) / (n - 1.0));
  const double var_im = std::max(0.0, (sum_im2 - sum_im * sum_im / n) / (n - 1.0));
  est.std_error = std::sqrt((var_re + var_im) / n);
  return est;
}

// ---------------------------------------------------------------------------
// Radial spherical function
//   phi(r, s) = Gamma(n/2) / (sqrt(pi) Gamma((n-1)/2)) *
//               int_0^pi e^{s r cos(theta)} sin^{n-2}(theta) dtheta
// ---------------------------------------------------------------------------

namespace detail {

// Scaled quadrature in theta. Substituting t = cos(theta) would leave the
// endpoint factor (1 - t^2)^{(n-3)/2}, which is singular for n = 2 and has
// half-integer endpoint powers for even n; in theta the integrand is entire,
// so a Gauss-Legendre rule converges spectrally for every n >= 2. The
// exponent is anchored at the maximum-modulus endpoint (e^{a(cos(theta)-1)}
// for Re a >= 0), so the integrand stays <= 1 in modulus and the e^{a} factor
// is restored in log space.
inline std::complex<double> phi_scaled_integral(int n, std::complex<double> a, int nodes) {
  const double anchor = (a.real() >= 0.0) ? 1.0 : -1.0;
  auto f = [n, a, anchor](double theta) -> std::complex<double> {
    const std::complex<double> e = std::exp(a * (std::cos(theta) - anchor));
    const double s = std::sin(theta);
    double w = 1.0;
    for (int p = 0; p < n - 2; ++p) w *= s;
    return e * w;
  };
  return integrate_composite(f, 0.0, std::numbers::pi, nodes);
}

inline double phi_norm_constant(int n) {
  return gamma_half_int(n) / (std::sqrt(std::numbers::pi) * gamma_half_int(n - 1));
}

inline LogComplex phi_assemble(int n, std::complex<double> a, std::complex<double> scaled) {
  const double anchor = (a.real() >= 0.0) ? 1.0 : -1.0;
  const std::complex<double> v = phi_norm_constant(n) * scaled;
  const double m = std::abs(v);
  if (m == 0.0) return LogComplex();
  return LogComplex(anchor * a.real() + std::log(m), anchor * a.imag() + std::arg(v));
}

}  // namespace detail

struct RadialStatus {
  int nodes_used = 0;
  bool under_resolved = false;  // explicit node count below the heuristic
  bool converged = true;        // auto escalation reached the agreement target
  double agreement = 0.0;       // last relative disagreement between doublings
};

inline constexpr int kPhiMaxNodes = 1 << 20;
inline constexpr double kPhiAgreeTol = 1e-10;

// Node-count heuristic: oscillation of e^{s r cos(theta)} is set by |Im s| r.
inline int phi_recommended_nodes(std::complex<double> s, double r) {
  const double osc = std::abs(s.imag()) * r;
  const double want = 4.0 * osc + 32.0;
  if (want >= static_cast<double>(kPhiMaxNodes)) return kPhiMaxNodes;
  return std::max(64, static_cast<int>(std::ceil(want)));
}

// phi(r, s) as a LogComplex. nodes == 0 selects the heuristic count and
// escalates x2 until two successive answers agree to 1e-10 (relative) or the
// node cap is reached; an explicit count is used as given. Accuracy
// shortfalls are reported through `status` (under_resolved / converged), not
// silently.
inline LogComplex phi_radial(int n, std::complex<double> s, double r, int nodes = 0,
                             RadialStatus* status = nullptr) {
  if (n < 2) throw std::domain_error("phi_radial: requires n >= 2");
  if (r < 0.0) throw std::domain_error("phi_radial: requires r >= 0");
  if (nodes != 0 && nodes < 8) throw std::domain_error("phi_radial: nodes >= 8 required");

  RadialStatus local;
  RadialStatus& st = status ? *status : local;
  st = RadialStatus{};

  if (r == 0.0) {
    st.nodes_used = 0;
    return LogComplex(0.0, 0.0);  // normalized measure: phi(0, s) = 1 exactly
  }

  const std::complex<double> a = s * r;
  const int recommended = phi_recommended_nodes(s, r);

  if (nodes != 0) {
    st.nodes_used = nodes;
    st.under_resolved = nodes < recommended;
    return detail::phi_assemble(n, a, detail::phi_scaled_integral(n, a, nodes));
  }

  int cur = std::min(recommended, kPhiMaxNodes / 2);
  std::complex<double> prev = detail::phi_scaled_integral(n, a, cur);
  while (true) {
    const int next = std::min(2 * cur, kPhiMaxNodes);
    const std::complex<double> val = detail::phi_scaled_integral(n, a, next);
    const double scale = std::max(std::abs(prev), std::abs(val));
    const double diff = std::abs(val - prev);
    st.agreement = (scale > 0.0) ? diff / scale : 0.0;
    // near zeros of the integral the relative criterion is unreachable; an
    // absolute floor at the quadrature's own scale keeps the loop honest
    const bool ok = diff <= kPhiAgreeTol * scale || diff <= 1e-14;
    if (ok) {
      st.nodes_used = next;
      st.converged = true;
      return detail::phi_assemble(n, a, val);
    }
    if (next >= kPhiMaxNodes) {
      st.nodes_used = next;
      st.converged = false;
      return detail::phi_assemble(n, a, val);
    }
    prev = val;
    cur = next;
  }
}

// Leading asymptotic term for Re s > 0, r -> infinity:
//   phi(r, s) ~ Gamma(n/2) 2^{(n-3)/2} / sqrt(pi) * e^{s r} / (s r)^{(n-1)/2}
// computed in log space with the principal branch of (s r)^{(n-1)/2}.
inline LogComplex phi_asymptotic(int n, std::complex<double> s, double r) {
  if (n < 2) throw std::domain_error("phi_asymptotic: requires n >= 2");
  if (!(s.real() > 0.0)) throw std::domain_error("phi_asymptotic: requires Re s > 0");
  if (!(r > 0.0)) throw std::domain_error("phi_asymptotic: requires r > 0");

  const std::complex<double> a = s * r;
  const double half_nm1 = 0.5 * (n - 1);
  const double log_const = std::log(gamma_half_int(n)) +
                           0.5 * (n - 3) * std::numbers::ln2 -
                           0.5 * std::log(std::numbers::pi);
  const double log_mag = a.real() + log_const - half_nm1 * std::log(std::abs(a));
  const double phase = a.imag() - half_nm1 * std::arg(a);
  return LogComplex(log_mag, phase);
}

// ---------------------------------------------------------------------------
// Crossover constants for the hybrid evaluator. R*(n) is the smallest |s| r
// at which quadrature and the asymptotic leading term agree to agree_tol,
// measured by tools/mh_calibrate and stored in constants/crossover.json.
// MH_CONSTANTS_PATH overrides the table at runtime.
// ---------------------------------------------------------------------------

struct CrossoverTable {
  int version = 0;
  double agree_tol = 1e-6;
  std::map<int, double> r_star;
};

namespace detail {

inline CrossoverTable builtin_crossover_table() {
  // mirror of constants/crossover.json; regenerate with tools/mh_calibrate
  CrossoverTable t;
  t.version = 1;
  t.agree_tol = 1e-6;
  t.r_star = {{2, 128000.0}, {3, 7.5},       {4, 384000.0}, {5, 1024000.0},
              {6, 1920000.0}, {7, 3072000.0}, {8, 4480000.0}};
  return t;
}

inline CrossoverTable parse_crossover_json(const nlohmann::json& j) {
  CrossoverTable t;
  t.version = j.at("version").get<int>();
  t.agree_tol = j.at("agree_tol").get<double>();
  for (const auto& [key, val] : j.at("r_star").items()) {
    t.r_star[std::stoi(key)] = val.get<double>();
  }
  return t;
}

}  // namespace detail

inline const CrossoverTable& crossover_table() {
  static std::mutex mu;
  static std::optional<CrossoverTable> table;
  std::lock_guard<std::mutex> lock(mu);
  if (!table) {
    const char* path = std::getenv("MH_CONSTANTS_PATH");
    if (path != nullptr) {
      std::ifstream in(path);
      if (!in) throw std::runtime_error(std::string("cannot open constants file ") + path);
      nlohmann::json j;
      in >> j;
      table = detail::parse_crossover_json(j);
    } else {
      table = detail::builtin_crossover_table();
    }
  }
  return *table;
}

// R*(n); beyond the measured table the leading-correction scaling
// |(n-1)(n-3)|/8 / agree_tol extends it (the dispatcher re-checks agreement
// at the crossover before trusting the asymptotic branch either way).
inline double crossover_sr(int n) {
  const CrossoverTable& t = crossover_table();
  const auto it = t.r_star.find(n);
  if (it != t.r_star.end()) return it->second;
  const double c1 = std::abs((n - 1.0) * (n - 3.0)) / 8.0;
  return std::max(16.0, 1.25 * c1 / t.agree_tol);
}

enum class PhiBranch { Quadrature, Asymptotic, QuadratureEscalated };

inline const char* to_string(PhiBranch b) {
  switch (b) {
    case PhiBranch::Quadrature: return "quadrature";
    case PhiBranch::Asymptotic: return "asymptotic";
    case PhiBranch::QuadratureEscalated: return "quadrature-escalated";
  }
  return "?";
}

struct PhiResult {
  LogComplex value;
  PhiBranch branch = PhiBranch::Quadrature;
  double err_est = 0.0;
  int nodes = 0;
  bool converged = true;
};

// Hybrid evaluator: quadrature below the crossover; above it the asymptotic
// term, but only for Re s > 0 and only after quadrature and the asymptotic
// agree to agree_tol at the crossover radius; escalated quadrature otherwise.
// The plain-quadrature label additionally caps at |s| r = 709 (the double
// overflow boundary): beyond it the run is annotated as escalated even when
// the crossover has not been reached.
inline constexpr double kQuadratureLabelCap = 709.0;

inline PhiResult phi_eval(int n, std::complex<double> s, double r) {
  if (r < 0.0) throw std::domain_error("phi_eval: requires r >= 0");
  PhiResult res;
  const double sr = std::abs(s) * r;
  const double rstar = crossover_sr(n);

  auto quadrature = [&](PhiBranch branch) {
    RadialStatus st;
    res.value = phi_radial(n, s, r, 0, &st);
    res.branch = branch;
    res.nodes = st.nodes_used;
    res.err_est = st.agreement;
    res.converged = st.converged;
  };

  if (sr <= std::min(rstar, kQuadratureLabelCap) || std::abs(s) == 0.0) {
    quadrature(PhiBranch::Quadrature);
    return res;
  }
  if (sr > rstar && s.real() > 0.0) {
    const double r_c = rstar / std::abs(s);
    const LogComplex q = phi_radial(n, s, r_c);
    const LogComplex a = phi_asymptotic(n, s, r_c);
    const std::complex<double> ratio = LogComplex::ratio(q, a);
    const double disagree = std::abs(ratio - std::complex<double>(1.0, 0.0));
    if (disagree <= crossover_table().agree_tol) {
      res.value = phi_asymptotic(n, s, r);
      res.branch = PhiBranch::Asymptotic;
      // leading correction decays like 1/(s r); scale the measured mismatch
      res.err_est = disagree * rstar / sr;
      res.nodes = 0;
      return res;
    }
  }
  quadrature(PhiBranch::QuadratureEscalated);
  return res;
}

// ---------------------------------------------------------------------------
// Empirical boundedness classifier: sweep |psi_lambda| along rays through the
// slice directions; unbounded needs a witness exceeding the threshold by more
// than three standard errors.
// ---------------------------------------------------------------------------

enum class Verdict { Bounded, Unbounded, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Bounded: return "Bounded";
    case Verdict::Unbounded: return "Unbounded";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct RayEvaluation {
  int direction = 0;
  double t = 0.0;
  double abs_value = 0.0;
  double std_error = 0.0;
};

struct BoundednessReport {
  Verdict verdict = Verdict::Inconclusive;
  std::vector<RayEvaluation> evaluations;
  std::optional<RayEvaluation> witness;
};

inline std::vector<double> default_boundedness_grid() {
  std::vector<double> g;
  for (int k = 0; k <= 10; ++k) g.push_back(static_cast<double>(1 << k));
  return g;
}

inline BoundednessReport boundedness_classify(const MotionModel& model,
                                              const SpectralParam& lambda,
                                              const std::vector<double>& t_grid,
                                              double threshold, long samples,
                                              std::uint64_t seed,
                                              double se_ceiling = 0.02) {
  if (t_grid.empty()) throw std::domain_error("boundedness_classify: empty grid");
  if (!(threshold > 1.0)) throw std::domain_error("boundedness_classify: threshold must exceed 1");

  BoundednessReport report;
  bool noisy = false;

  for (int d = 0; d < model.rank; ++d) {
    std::vector<double> h(model.rank, 0.0);
    h[d] = 1.0;
    PVector dir = model.embed_a(h);
    dir /= dir.norm();

    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
      const double t = t_grid[ti];
      const std::uint64_t sub = split_seed(seed, static_cast<std::uint64_t>(d) * t_grid.size() + ti);
      const MCEstimate est = psi_monte_carlo(model, lambda, PVector(t * dir), samples, sub);

      RayEvaluation ev{d, t, std::abs(est.value), est.std_error};
      report.evaluations.push_back(ev);

      // overflowing growth counts as a decisive witness
      if (!std::isfinite(ev.abs_value) || ev.abs_value > threshold + 3.0 * ev.std_error) {
        report.verdict = Verdict::Unbounded;
        report.witness = ev;
        return report;
      }
      if (ev.std_error > se_ceiling * std::max(1.0, ev.abs_value)) noisy = true;
    }
  }

  report.verdict = noisy ? Verdict::Inconclusive : Verdict::Bounded;
  return report;
}

}  // namespace mh
