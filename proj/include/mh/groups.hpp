#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mh/rng.hpp"

namespace mh {

enum class GroupFamily { SO, O, U, SU, Sp };

// A classical compact matrix group acting orthogonally on R^n. The rank
// parameter m is the matrix size over the base field; the ambient real
// dimension is n = m (SO/O), 2m (U/SU) or 4m (Sp).
struct GroupSpec {
  GroupFamily family;
  int m;

  int ambient_dim() const {
    switch (family) {
      case GroupFamily::SO:
      case GroupFamily::O:
        return m;
      case GroupFamily::U:
      case GroupFamily::SU:
        return 2 * m;
      case GroupFamily::Sp:
        return 4 * m;
    }
    return 0;
  }

  std::string name() const {
    switch (family) {
      case GroupFamily::SO: return "SO(" + std::to_string(m) + ")";
      case GroupFamily::O:  return "O(" + std::to_string(m) + ")";
      case GroupFamily::U:  return "U(" + std::to_string(m) + ")";
      case GroupFamily::SU: return "SU(" + std::to_string(m) + ")";
      case GroupFamily::Sp: return "Sp(" + std::to_string(m) + ")";
    }
    return "?";
  }

  static GroupSpec so(int n) { return {GroupFamily::SO, check(n)}; }
  static GroupSpec o(int n) { return {GroupFamily::O, check(n)}; }
  static GroupSpec u(int m) { return {GroupFamily::U, check(m)}; }
  static GroupSpec su(int m) { return {GroupFamily::SU, check(m)}; }
  static GroupSpec sp(int m) { return {GroupFamily::Sp, check(m)}; }

 private:
  static int check(int m) {
    if (m < 1) throw std::domain_error("GroupSpec: parameter must be positive");
    return m;
  }
};

// Group element in its real orthogonal realization (n x n).
struct GroupElement {
  Eigen::MatrixXd matrix;
};

// Requested group exists in the classification but has no sampler here
// (G2, Spin(7), Spin(9)).
struct no_sampler_error : std::runtime_error {
  explicit no_sampler_error(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

struct Quat {
  double w = 0, x = 0, y = 0, z = 0;

  Quat operator+(const Quat& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
  Quat operator-(const Quat& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
  Quat operator*(const Quat& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }
  Quat operator*(double c) const { return {w * c, x * c, y * c, z * c}; }
  Quat conj() const { return {w, -x, -y, -z}; }
  double norm2() const { return w * w + x * x + y * y + z * z; }
};

// Left-multiplication matrix of q on H = R^4 in the (1, i, j, k) basis.
inline Eigen::Matrix4d quat_left_matrix(const Quat& q) {
  Eigen::Matrix4d L;
  L << q.w, -q.x, -q.y, -q.z,
       q.x,  q.w, -q.z,  q.y,
       q.y,  q.z,  q.w, -q.x,
       q.z, -q.y,  q.x,  q.w;
  return L;
}

// Real 2m x 2m realization of a complex m x m matrix: each entry a+bi becomes
// the block [[a, -b], [b, a]] (coordinates interleave Re z_k, Im z_k).
inline Eigen::MatrixXd realize_complex(const Eigen::MatrixXcd& U) {
  const int m = static_cast<int>(U.rows());
  Eigen::MatrixXd R(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const double a = U(i, j).real();
      const double b = U(i, j).imag();
      R(2 * i, 2 * j) = a;
      R(2 * i, 2 * j + 1) = -b;
      R(2 * i + 1, 2 * j) = b;
      R(2 * i + 1, 2 * j + 1) = a;
    }
  }
  return R;
}

inline Eigen::MatrixXd realize_quaternion(const std::vector<std::vector<Quat>>& A) {
  const int m = static_cast<int>(A.size());
  Eigen::MatrixXd R(4 * m, 4 * m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      R.block<4, 4>(4 * i, 4 * j) = quat_left_matrix(A[i][j]);
    }
  }
  return R;
}

}  // namespace detail

// Haar-distributed sampling by the QR-of-Gaussian construction: fill a
// Ginibre matrix over the base field, factor A = QR, and normalize so the
// diagonal of R is positive (real case: multiply columns of Q by sign(R_jj);
// complex case: by conj(R_jj)/|R_jj|). The decomposition is then unique and
// Q is exactly Haar. SO gets a final column flip when det Q = -1; SU divides
// out the determinant phase on the first column. Sp uses twice-iterated
// modified Gram-Schmidt over the quaternions with positive real diagonal.
//
// The sampler is incremental so long Monte Carlo loops need not materialize
// the whole stream; haar_sample() below wraps it. Streams are bit-identical
// for identical (spec, seed).
class HaarSampler {
 public:
  HaarSampler(const GroupSpec& spec, std::uint64_t seed) : spec_(spec), rng_(seed) {}

  GroupElement next() {
    switch (spec_.family) {
      case GroupFamily::SO:
      case GroupFamily::O:
        return {next_orthogonal(spec_.family == GroupFamily::SO)};
      case GroupFamily::U:
      case GroupFamily::SU:
        return {detail::realize_complex(next_unitary(spec_.family == GroupFamily::SU))};
      case GroupFamily::Sp:
        return {detail::realize_quaternion(next_symplectic())};
    }
    throw std::logic_error("HaarSampler: unreachable");
  }

 private:
  Eigen::MatrixXd next_orthogonal(bool special) {
    const int n = spec_.m;
    Eigen::MatrixXd A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = rng_.gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
    Eigen::MatrixXd Q = qr.householderQ();
    const Eigen::VectorXd d = qr.matrixQR().diagonal();
    for (int j = 0; j < n; ++j) {
      if (d(j) < 0.0) Q.col(j) = -Q.col(j);
    }
    if (special && Q.determinant() < 0.0) Q.col(n - 1) = -Q.col(n - 1);
    return Q;
  }

  Eigen::MatrixXcd next_unitary(bool special) {
    const int m = spec_.m;
    Eigen::MatrixXcd A(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) A(i, j) = std::complex<double>(rng_.gaussian(), rng_.gaussian());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
    Eigen::MatrixXcd Q = qr.householderQ();
    const Eigen::VectorXcd d = qr.matrixQR().diagonal();
    for (int j = 0; j < m; ++j) {
      const double a = std::abs(d(j));
      if (a > 0.0) Q.col(j) *= d(j) / a;
    }
    if (special) {
      // divide the determinant phase out of one column; left-invariance of
      // the image measure pins it as Haar on SU(m)
      const std::complex<double> det = Q.determinant();
      Q.col(0) *= std::conj(det) / std::abs(det);
    }
    return Q;
  }

  std::vector<std::vector<detail::Quat>> next_symplectic() {
    using detail::Quat;
    const int m = spec_.m;
    // columns[j][i]: entry i of column j
    std::vector<std::vector<Quat>> col(m, std::vector<Quat>(m));
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i)
        col[j][i] = Quat{rng_.gaussian(), rng_.gaussian(), rng_.gaussian(), rng_.gaussian()};

    auto inner = [m](const std::vector<Quat>& u, const std::vector<Quat>& v) {
      Quat s{};
      for (int i = 0; i < m; ++i) s = s + u[i].conj() * v[i];
      return s;
    };
    // modified Gram-Schmidt, two passes for orthogonality at 1e-13 level
    for (int j = 0; j < m; ++j) {
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i < j; ++i) {
          const Quat r = inner(col[i], col[j]);
          for (int k = 0; k < m; ++k) col[j][k] = col[j][k] - col[i][k] * r;
        }
      }
      double nrm2 = 0.0;
      for (int k = 0; k < m; ++k) nrm2 += col[j][k].norm2();
      const double inv = 1.0 / std::sqrt(nrm2);
      for (int k = 0; k < m; ++k) col[j][k] = col[j][k] * inv;
    }
    std::vector<std::vector<Quat>> A(m, std::vector<Quat>(m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) A[i][j] = col[j][i];
    return A;
  }

  GroupSpec spec_;
  Rng rng_;
};

// Deterministic batch of Haar samples; same (spec, seed, count) gives a
// bit-identical list.
inline std::vector<GroupElement> haar_sample(const GroupSpec& spec, std::uint64_t seed, int count) {
  if (count < 1) throw std::domain_error("haar_sample: count must be positive");
  HaarSampler sampler(spec, seed);
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(sampler.next());
  return out;
}

}  // namespace mh
