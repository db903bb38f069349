#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <json.hpp>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "mh/classification.hpp"
#include "mh/groups.hpp"

namespace mh {

// Point of the flat space p, in an orthonormal coordinate basis.
using PVector = Eigen::VectorXd;

// Spectral parameter: a complex linear functional on the abelian slice a,
// stored in the coordinates dual to MotionModel::embed_a.
struct SpectralParam {
  std::vector<std::complex<double>> components;

  SpectralParam() = default;
  SpectralParam(std::initializer_list<std::complex<double>> c) : components(c) {}
  explicit SpectralParam(std::vector<std::complex<double>> c) : components(std::move(c)) {}

  static SpectralParam real(std::initializer_list<double> vals) {
    SpectralParam p;
    for (double v : vals) p.components.emplace_back(v, 0.0);
    return p;
  }

  static SpectralParam single(std::complex<double> c) { return SpectralParam{{c}}; }

  int rank() const { return static_cast<int>(components.size()); }

  double max_imag() const {
    double m = 0.0;
    for (const auto& c : components) m = std::max(m, std::abs(c.imag()));
    return m;
  }

  bool is_real(double tol = 0.0) const { return max_imag() <= tol; }

  SpectralParam operator-() const {
    SpectralParam out = *this;
    for (auto& c : out.components) c = -c;
    return out;
  }
};

// A Weyl-group image of a spectral parameter together with a group element
// realizing it: pairing(param, Y) == pairing(original, Ad(witness) Y) for all Y.
struct WeylImage {
  SpectralParam param;
  Eigen::MatrixXd witness;
};

// A concrete flat symmetric-space instance: the compact group K acting on p,
// the abelian slice a inside p, the spectral pairing, and the Weyl orbit map.
// Models are immutable after construction and safe to share.
struct MotionModel {
  std::string name;
  int dim_p = 0;
  int rank = 0;
  GroupSpec group{GroupFamily::SO, 1};

  // Ad(k) Y for k in the real orthogonal realization
  std::function<PVector(const Eigen::MatrixXd&, const PVector&)> act;
  // slice coordinates (length = rank) -> point of p
  std::function<PVector(const std::vector<double>&)> embed_a;
  // complex-linear in the parameter, real-linear in Y
  std::function<std::complex<double>(const SpectralParam&, const PVector&)> pair;
  std::function<std::vector<WeylImage>(const SpectralParam&)> weyl_orbit;

  nlohmann::ordered_json descriptor() const {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["dim_p"] = dim_p;
    j["rank"] = rank;
    j["group"] = group.name();
    return j;
  }
};

// K acting on p = R^n by its defining orthogonal representation; a = R e_1,
// pairing lambda(Y) = lambda_1 * Y_1, Weyl orbit {lambda, -lambda}.
inline MotionModel rank_one_model(int n, const GroupSpec& spec) {
  if (n < 2) throw std::domain_error("rank_one_model: requires n >= 2");
  if (spec.ambient_dim() != n || !is_transitive_on_spheres(spec, n)) {
    throw std::invalid_argument("rank_one_model: " + spec.name() +
                                " is not transitive on spheres in R^" + std::to_string(n));
  }

  MotionModel model;
  model.name = "rank1:" + std::to_string(n) + ":" + spec.name();
  model.dim_p = n;
  model.rank = 1;
  model.group = spec;

  model.act = [](const Eigen::MatrixXd& k, const PVector& y) -> PVector { return k * y; };

  model.embed_a = [n](const std::vector<double>& h) -> PVector {
    if (h.size() != 1) throw std::invalid_argument("embed_a: rank-one slice takes one coordinate");
    PVector y = PVector::Zero(n);
    y(0) = h[0];
    return y;
  };

  model.pair = [](const SpectralParam& lam, const PVector& y) -> std::complex<double> {
    if (lam.rank() != 1) throw std::invalid_argument("pairing: rank-one parameter has one component");
    return lam.components[0] * y(0);
  };

  // The nontrivial Weyl element sends lambda to -lambda; it is realized by
  // any k in K whose realization has first row (-1, 0, ..., 0). The diagonal
  // element diag(-1, -1, 1, ..., 1) of the base-field matrix group works for
  // every family here (for Sp(1) it degenerates to the scalar -1).
  model.weyl_orbit = [n, spec](const SpectralParam& lam) -> std::vector<WeylImage> {
    if (lam.rank() != 1) throw std::invalid_argument("weyl_orbit: rank mismatch");
    std::vector<WeylImage> orbit;
    orbit.push_back({lam, Eigen::MatrixXd::Identity(n, n)});

    const std::complex<double> c = lam.components[0];
    if (c != -c) {
      // diag(-1, -1, 1, ..., 1) over the base field; for Sp(1) this caps at
      // the scalar -1. Lies in K for every family and negates Y_1.
      Eigen::MatrixXd w = Eigen::MatrixXd::Identity(n, n);
      const int block = spec.ambient_dim() / spec.m;  // real rows per base-field entry
      for (int r = 0; r < 2 * block && r < n; ++r) w(r, r) = -1.0;
      orbit.push_back({-lam, w});
    }
    return orbit;
  };

  return model;
}

namespace detail {

// Orthonormal basis of the symmetric traceless n x n matrices under the
// Frobenius inner product: first the n-1 diagonal traceless directions, then
// the off-diagonal symmetric pairs.
struct SymTracelessBasis {
  int n;
  std::vector<Eigen::MatrixXd> elems;

  explicit SymTracelessBasis(int n_) : n(n_) {
    for (int k = 1; k < n; ++k) {
      Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
      for (int i = 0; i < k; ++i) d(i, i) = 1.0;
      d(k, k) = -static_cast<double>(k);
      d /= std::sqrt(static_cast<double>(k) * (k + 1));
      elems.push_back(d);
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
        s(i, j) = s(j, i) = 1.0 / std::sqrt(2.0);
        elems.push_back(s);
      }
    }
  }

  int dim() const { return static_cast<int>(elems.size()); }

  Eigen::MatrixXd to_matrix(const PVector& c) const {
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < dim(); ++i) y += c(i) * elems[i];
    return y;
  }

  PVector to_coords(const Eigen::MatrixXd& y) const {
    PVector c(dim());
    for (int i = 0; i < dim(); ++i) c(i) = (y.cwiseProduct(elems[i])).sum();
    return c;
  }
};

// lambda in dual slice coordinates -> the trace-zero diagonal functional
// l = (l_1, ..., l_n), sum l_i = 0, with l(embed_a(h)) = sum lambda_i h_i.
inline Eigen::VectorXcd sl_trace_zero_functional(const SpectralParam& lam, int n) {
  std::complex<double> s{0.0, 0.0};
  for (const auto& c : lam.components) s += c;
  Eigen::VectorXcd l(n);
  for (int i = 0; i < n - 1; ++i) l(i) = lam.components[i] - s / static_cast<double>(n);
  l(n - 1) = -s / static_cast<double>(n);
  return l;
}

inline SpectralParam sl_from_trace_zero(const Eigen::VectorXcd& l) {
  const int n = static_cast<int>(l.size());
  std::vector<std::complex<double>> comps(n - 1);
  for (int i = 0; i < n - 1; ++i) comps[i] = l(i) - l(n - 1);
  return SpectralParam(std::move(comps));
}

}  // namespace detail

// The flat model of SL(n, R)/SO(n): p = symmetric traceless matrices with
// the Frobenius inner product, K = SO(n) acting by conjugation, a = diagonal
// traceless matrices with coordinates (h_1, ..., h_{n-1}), h_n = -sum h_i.
// The Weyl group permutes the n diagonal functionals; witnesses are
// permutation matrices with one column sign-flipped into SO(n) when needed.
inline MotionModel sl_flat_model(int n) {
  if (n < 2) throw std::domain_error("sl_flat_model: requires n >= 2");

  auto basis = std::make_shared<detail::SymTracelessBasis>(n);

  MotionModel model;
  model.name = "slflat:" + std::to_string(n);
  model.dim_p = basis->dim();
  model.rank = n - 1;
  model.group = GroupSpec::so(n);

  model.act = [basis](const Eigen::MatrixXd& k, const PVector& c) -> PVector {
    return basis->to_coords(k * basis->to_matrix(c) * k.transpose());
  };

  model.embed_a = [basis, n](const std::vector<double>& h) -> PVector {
    if (static_cast<int>(h.size()) != n - 1) {
      throw std::invalid_argument("embed_a: slice coordinates must have length n-1");
    }
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    double sum = 0.0;
    for (int i = 0; i < n - 1; ++i) {
      d(i, i) = h[i];
      sum += h[i];
    }
    d(n - 1, n - 1) = -sum;
    return basis->to_coords(d);
  };

  model.pair = [basis, n](const SpectralParam& lam, const PVector& c) -> std::complex<double> {
    if (lam.rank() != n - 1) throw std::invalid_argument("pairing: rank mismatch");
    const Eigen::VectorXcd l = detail::sl_trace_zero_functional(lam, n);
    const Eigen::MatrixXd y = basis->to_matrix(c);
    std::complex<double> out{0.0, 0.0};
    for (int i = 0; i < n; ++i) out += l(i) * y(i, i);
    return out;
  };

  model.weyl_orbit = [n](const SpectralParam& lam) -> std::vector<WeylImage> {
    if (lam.rank() != n - 1) throw std::invalid_argument("weyl_orbit: rank mismatch");
    const Eigen::VectorXcd l = detail::sl_trace_zero_functional(lam, n);

    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;

    std::vector<WeylImage> orbit;
    auto seen = [&orbit](const SpectralParam& p) {
      for (const auto& img : orbit) {
        double d = 0.0;
        for (int i = 0; i < p.rank(); ++i) d += std::abs(p.components[i] - img.param.components[i]);
        if (d <= 1e-12) return true;
      }
      return false;
    };

    do {
      Eigen::VectorXcd lp(n);
      // sigma acts by lp(sigma(i)) = l(i); witness below matches this convention
      for (int i = 0; i < n; ++i) lp(perm[i]) = l(i);
      SpectralParam cand = detail::sl_from_trace_zero(lp);
      if (seen(cand)) continue;

      Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
      for (int i = 0; i < n; ++i) w(i, perm[i]) = 1.0;
      // Conjugation reads only the diagonal through the pairing, so flipping
      // one column sign to land in SO(n) changes nothing observable.
      if (w.determinant() < 0.0) w.col(0) = -w.col(0);
      orbit.push_back({std::move(cand), std::move(w)});
    } while (std::next_permutation(perm.begin(), perm.end()));

    return orbit;
  };

  return model;
}

}  // namespace mh
