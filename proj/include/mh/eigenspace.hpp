#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <json.hpp>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "mh/bessel_series.hpp"
#include "mh/quadrature.hpp"
#include "mh/rng.hpp"

namespace mh {

// Requested point is outside the quadrature-resolution budget of the density.
struct refinement_needed : std::runtime_error {
  double budget, requested;
  refinement_needed(double b, double q)
      : std::runtime_error("synthesis needs a finer sphere rule: |lambda||x| = " +
                           std::to_string(q) + " exceeds budget " + std::to_string(b)),
        budget(b), requested(q) {}
};

// Inversion radius too close to a Bessel zero; names the offending order.
struct bessel_zero_error : std::runtime_error {
  int k;
  double magnitude;
  bessel_zero_error(int k_, double mag)
      : std::runtime_error("analyze: |J_" + std::to_string(k_) + "(lambda r)| = " +
                           std::to_string(mag) + " is below 1e-6; radius is near a Bessel zero"),
        k(k_), magnitude(mag) {}
};

// L^2 density on S^{n-1} (n = 2 or 3) discretized on a fixed quadrature rule:
// unit nodes, positive weights summing to 1 (normalized surface measure), and
// complex values at the nodes.
//
// Rules: n = 2 is the N-point trapezoid on the circle (spectrally accurate
// for periodic integrands); n = 3 is the product of Gauss-Legendre in
// cos(polar) and the trapezoid in azimuth.
struct SphereDensity {
  int n = 2;
  std::vector<Eigen::Vector3d> nodes;  // z = 0 when n = 2
  std::vector<double> weights;
  std::vector<std::complex<double>> values;

  int size() const { return static_cast<int>(nodes.size()); }

  // largest |lambda||x| the rule resolves to ~1e-9 relative
  double resolution_budget() const { return budget_; }

  std::complex<double> mean() const {
    std::complex<double> s{0.0, 0.0};
    for (int i = 0; i < size(); ++i) s += weights[i] * values[i];
    return s;
  }

  int nearest_node(const Eigen::Vector3d& direction) const {
    int best = 0;
    double best_dot = -2.0;
    for (int i = 0; i < size(); ++i) {
      const double d = nodes[i].dot(direction.normalized());
      if (d > best_dot) {
        best_dot = d;
        best = i;
      }
    }
    return best;
  }

  // replace values by a point-mass approximant: all weight on the node
  // nearest to `direction`, normalized so the density still integrates to 1
  void set_point_mass(const Eigen::Vector3d& direction) {
    const int best = nearest_node(direction);
    for (auto& v : values) v = 0.0;
    values[best] = 1.0 / weights[best];
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n;
    nlohmann::ordered_json nd = nlohmann::ordered_json::array();
    for (const auto& p : nodes) {
      if (n == 2) nd.push_back({p.x(), p.y()});
      else nd.push_back({p.x(), p.y(), p.z()});
    }
    j["nodes"] = nd;
    j["weights"] = weights;
    nlohmann::ordered_json vals = nlohmann::ordered_json::array();
    for (const auto& v : values) vals.push_back({v.real(), v.imag()});
    j["values"] = vals;
    return j;
  }

  static SphereDensity from_json(const nlohmann::json& j);

  double budget_ = 0.0;
};

// Circle rule with N uniform nodes, F == 1. The budget follows the sizing
// rule N = 2 ceil(z_max) + 64.
inline SphereDensity make_circle_density(int points = 124) {
  if (points < 8) throw std::domain_error("make_circle_density: at least 8 points");
  SphereDensity d;
  d.n = 2;
  d.nodes.reserve(points);
  for (int j = 0; j < points; ++j) {
    const double th = 2.0 * std::numbers::pi * j / points;
    d.nodes.emplace_back(std::cos(th), std::sin(th), 0.0);
  }
  d.weights.assign(points, 1.0 / points);
  d.values.assign(points, {1.0, 0.0});
  d.budget_ = 0.5 * (points - 64);
  return d;
}

// Product rule on S^2: Gauss-Legendre in u = cos(polar) x trapezoid in
// azimuth, F == 1. Sizing: polar = ceil(0.6 z_max) + 20, azimuth =
// 2 ceil(z_max) + 64.
inline SphereDensity make_sphere_density(int polar = 38, int azimuth = 124) {
  if (polar < 4 || azimuth < 8) throw std::domain_error("make_sphere_density: rule too small");
  SphereDensity d;
  d.n = 3;
  const GaussLegendreRule& gl = gauss_legendre(polar);
  for (int i = 0; i < polar; ++i) {
    const double u = gl.nodes[i];
    const double su = std::sqrt(std::max(0.0, 1.0 - u * u));
    for (int j = 0; j < azimuth; ++j) {
      const double ph = 2.0 * std::numbers::pi * j / azimuth;
      d.nodes.emplace_back(su * std::cos(ph), su * std::sin(ph), u);
      d.weights.push_back(0.5 * gl.weights[i] / azimuth);
    }
  }
  d.values.assign(d.nodes.size(), {1.0, 0.0});
  d.budget_ = std::min((polar - 20.0) / 0.6, 0.5 * (azimuth - 64));
  return d;
}

// Seeded random density: independent complex Gaussian values at the nodes.
inline SphereDensity make_random_density(int n, std::uint64_t seed) {
  if (n != 2 && n != 3) throw std::domain_error("make_random_density: n must be 2 or 3");
  SphereDensity d = (n == 2) ? make_circle_density() : make_sphere_density();
  Rng rng(seed);
  for (auto& v : d.values) v = {rng.gaussian(), rng.gaussian()};
  return d;
}

inline SphereDensity SphereDensity::from_json(const nlohmann::json& j) {
  SphereDensity d;
  d.n = j.at("n").get<int>();
  if (d.n != 2 && d.n != 3) throw std::invalid_argument("SphereDensity: n must be 2 or 3");

  for (const auto& p : j.at("nodes")) {
    Eigen::Vector3d v = Eigen::Vector3d::Zero();
    for (int i = 0; i < d.n; ++i) v(i) = p[i].get<double>();
    if (std::abs(v.norm() - 1.0) > 1e-12) {
      throw std::invalid_argument("SphereDensity: nodes must be unit vectors");
    }
    d.nodes.push_back(v);
  }
  double wsum = 0.0;
  for (const auto& w : j.at("weights")) {
    d.weights.push_back(w.get<double>());
    wsum += d.weights.back();
  }
  for (const auto& v : j.at("values")) {
    d.values.push_back({v[0].get<double>(), v[1].get<double>()});
  }
  if (d.weights.size() != d.nodes.size() || d.values.size() != d.nodes.size()) {
    throw std::invalid_argument("SphereDensity: nodes/weights/values length mismatch");
  }
  if (std::abs(wsum - 1.0) > 1e-12) {
    throw std::invalid_argument("SphereDensity: weights must sum to 1");
  }

  // invert the fixed-rule sizing to recover the resolution budget
  if (d.n == 2) {
    d.budget_ = std::max(0.0, 0.5 * (d.size() - 64));
  } else {
    int polar = 0;
    std::vector<double> seen;
    for (const auto& p : d.nodes) {
      bool found = false;
      for (double u : seen) {
        if (std::abs(u - p.z()) < 1e-12) { found = true; break; }
      }
      if (!found) {
        seen.push_back(p.z());
        ++polar;
      }
    }
    const int azimuth = d.size() / std::max(1, polar);
    d.budget_ = std::max(0.0, std::min((polar - 20.0) / 0.6, 0.5 * (azimuth - 64)));
  }
  return d;
}

// Element of the lambda-eigenspace of the Laplacian, presented as the
// plane-wave synthesis of a sphere density:
//   f(x) = int_{S^{n-1}} e^{i lambda (x, w)} F(w) dw.
struct EigenFunctionHandle {
  std::complex<double> lambda;
  SphereDensity density;
};

inline std::complex<double> synthesize(const EigenFunctionHandle& h, const Eigen::VectorXd& x) {
  if (static_cast<int>(x.size()) != h.density.n) {
    throw std::invalid_argument("synthesize: point dimension mismatch");
  }
  const double z = std::abs(h.lambda) * x.norm();
  if (z > h.density.resolution_budget()) {
    throw refinement_needed(h.density.resolution_budget(), z);
  }
  Eigen::Vector3d x3 = Eigen::Vector3d::Zero();
  for (int i = 0; i < h.density.n; ++i) x3(i) = x(i);

  const std::complex<double> il = std::complex<double>(0.0, 1.0) * h.lambda;
  std::complex<double> sum{0.0, 0.0};
  for (int j = 0; j < h.density.size(); ++j) {
    sum += h.density.weights[j] * std::exp(il * h.density.nodes[j].dot(x3)) * h.density.values[j];
  }
  return sum;
}

// |L_h f(x) + lambda^2 f(x)| with the 5-point (n=2) / 7-point (n=3) central
// second-difference stencil.
inline double laplacian_residual(const EigenFunctionHandle& h, const Eigen::VectorXd& x, double step) {
  if (!(step > 0.0)) throw std::domain_error("laplacian_residual: step must be positive");
  const int n = h.density.n;
  std::complex<double> lap{0.0, 0.0};
  const std::complex<double> center = synthesize(h, x);
  for (int d = 0; d < n; ++d) {
    Eigen::VectorXd xp = x, xm = x;
    xp(d) += step;
    xm(d) -= step;
    lap += synthesize(h, xp) + synthesize(h, xm) - 2.0 * center;
  }
  lap /= step * step;
  return std::abs(lap + h.lambda * h.lambda * center);
}

// Average of f over the rotation orbit of r e_1, i.e. over the sphere of
// radius r with the density's own rule. Equals mean(F) * phi_lambda(r).
inline std::complex<double> radial_average(const EigenFunctionHandle& h, double r) {
  std::complex<double> sum{0.0, 0.0};
  Eigen::VectorXd x(h.density.n);
  for (int j = 0; j < h.density.size(); ++j) {
    for (int i = 0; i < h.density.n; ++i) x(i) = r * h.density.nodes[j](i);
    sum += h.density.weights[j] * synthesize(h, x);
  }
  return sum;
}

namespace detail {

// i^k exactly, for any integer k
inline std::complex<double> i_pow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace detail

// K-type projection for n = 2:
//   (alpha_k * f)(x) = (1/2pi) int_0^{2pi} e^{i k theta} f(R_{-theta} x) dtheta
// by the trapezoid rule (spectrally accurate; the integrand is smooth and
// periodic). n = 3 projections beyond the radial average are not provided.
inline std::complex<double> ktype_project(const EigenFunctionHandle& h, int k,
                                          const Eigen::VectorXd& x) {
  if (h.density.n != 2) {
    throw std::invalid_argument("ktype_project: only n = 2 carries the Fourier K-types here");
  }
  const double z = std::abs(h.lambda) * x.norm();
  const int points = std::max(64, 2 * (static_cast<int>(std::ceil(z)) + std::abs(k)) + 32);
  std::complex<double> sum{0.0, 0.0};
  for (int j = 0; j < points; ++j) {
    const double th = 2.0 * std::numbers::pi * j / points;
    const double c = std::cos(th), s = std::sin(th);
    Eigen::VectorXd xr(2);
    // R_{-theta} x
    xr << c * x(0) + s * x(1), -s * x(0) + c * x(1);
    sum += std::exp(std::complex<double>(0.0, k * th)) * synthesize(h, xr);
  }
  return sum / static_cast<double>(points);
}

// Constructive inverse of synthesis at a single radius (n = 2): from samples
// of f on the circle |x| = r at M uniform angles, recover the angular
// coefficients of F for |k| <= max_k via
//   Fhat_k = c_k(f; r) / (i^k J_k(lambda r)).
// Radii near Bessel zeros make the division ill-posed and are rejected.
// Returns coefficients ordered k = -max_k, ..., max_k.
inline std::vector<std::complex<double>> analyze(const std::vector<std::complex<double>>& circle_samples,
                                                 std::complex<double> lambda, double r, int max_k) {
  if (max_k < 0) throw std::domain_error("analyze: max_k >= 0 required");
  const int m_samples = static_cast<int>(circle_samples.size());
  if (m_samples < 2 * max_k + 2) {
    throw std::invalid_argument("analyze: need more than 2*max_k + 1 circle samples");
  }

  std::vector<std::complex<double>> bessel(2 * max_k + 1);
  for (int k = -max_k; k <= max_k; ++k) {
    const std::complex<double> jk = bessel_jk_series(k, lambda * r);
    if (std::abs(jk) < 1e-6) throw bessel_zero_error(k, std::abs(jk));
    bessel[k + max_k] = jk;
  }

  std::vector<std::complex<double>> out(2 * max_k + 1);
  for (int k = -max_k; k <= max_k; ++k) {
    std::complex<double> c{0.0, 0.0};
    for (int j = 0; j < m_samples; ++j) {
      const double th = 2.0 * std::numbers::pi * j / m_samples;
      c += circle_samples[j] * std::exp(std::complex<double>(0.0, -k * th));
    }
    c /= static_cast<double>(m_samples);
    out[k + max_k] = c / (detail::i_pow(k) * bessel[k + max_k]);
  }
  return out;
}

// Samples of synthesize on the circle of radius r at M uniform angles,
// the expected input layout for analyze().
inline std::vector<std::complex<double>> sample_circle(const EigenFunctionHandle& h, double r,
                                                       int m_samples) {
  std::vector<std::complex<double>> out(m_samples);
  for (int j = 0; j < m_samples; ++j) {
    const double th = 2.0 * std::numbers::pi * j / m_samples;
    Eigen::VectorXd x(2);
    x << r * std::cos(th), r * std::sin(th);
    out[j] = synthesize(h, x);
  }
  return out;
}

// Angular Fourier coefficients of the density itself (n = 2), the reference
// for analyze() round trips: Fhat_k = sum_j w_j F_j e^{-i k theta_j}.
inline std::vector<std::complex<double>> density_fourier_coeffs(const SphereDensity& d, int max_k) {
  if (d.n != 2) throw std::invalid_argument("density_fourier_coeffs: n = 2 only");
  std::vector<std::complex<double>> out(2 * max_k + 1);
  for (int k = -max_k; k <= max_k; ++k) {
    std::complex<double> c{0.0, 0.0};
    for (int j = 0; j < d.size(); ++j) {
      const double th = std::atan2(d.nodes[j].y(), d.nodes[j].x());
      c += d.weights[j] * d.values[j] * std::exp(std::complex<double>(0.0, -k * th));
    }
    out[k + max_k] = c;
  }
  return out;
}

}  // namespace mh
