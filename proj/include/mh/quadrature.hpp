#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace mh {

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Nodes by Newton iteration on the three-term recurrence (the classical
// gauleg construction). Accurate to ~1e-15 for the sizes used here.
inline GaussLegendreRule make_gauss_legendre(int n) {
  if (n < 1) throw std::domain_error("make_gauss_legendre: n >= 1 required");
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

// Shared cache; rules are immutable once built.
inline const GaussLegendreRule& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::make_unique<GaussLegendreRule>(make_gauss_legendre(n))).first;
  }
  return *it->second;
}

// Fixed panel size for composite integration. Evaluation cost stays O(total
// nodes) no matter how far the node count is escalated, while each panel
// keeps Gauss-Legendre accuracy.
inline constexpr int kPanelNodes = 64;

// Integrate f over [a, b] with ceil(total_nodes / kPanelNodes) uniform panels
// of the cached 64-point rule. F: double -> double or std::complex<double>.
template <class F>
auto integrate_composite(F&& f, double a, double b, int total_nodes)
    -> decltype(f(a) * 1.0) {
  using R = decltype(f(a) * 1.0);
  if (total_nodes < 1) throw std::domain_error("integrate_composite: nodes >= 1 required");
  const int panels = (total_nodes + kPanelNodes - 1) / kPanelNodes;
  const GaussLegendreRule& rule = gauss_legendre(kPanelNodes);
  const double h = (b - a) / panels;
  R sum{};
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    const double half = 0.5 * h;
    R local{};
    for (int j = 0; j < kPanelNodes; ++j) {
      local += rule.weights[j] * f(mid + half * rule.nodes[j]);
    }
    sum += half * local;
  }
  return sum;
}

// Single-rule integration over [a, b] with an n-point rule.
template <class F>
auto integrate_gl(F&& f, double a, double b, int n) -> decltype(f(a) * 1.0) {
  using R = decltype(f(a) * 1.0);
  const GaussLegendreRule& rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  R sum{};
  for (int j = 0; j < n; ++j) {
    sum += rule.weights[j] * f(mid + half * rule.nodes[j]);
  }
  return half * sum;
}

}  // namespace mh
