#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <json.hpp>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "mh/log_complex.hpp"
#include "mh/motion_model.hpp"
#include "mh/rng.hpp"
#include "mh/spherical.hpp"

namespace mh {

enum class PointProvenance { Grid, SeededRandom };

// Finite point configuration in p used to form Gram matrices. Points are
// required pairwise distinct to 1e-9.
struct PointConfig {
  std::vector<PVector> points;
  PointProvenance provenance = PointProvenance::Grid;

  void validate() const {
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        if ((points[i] - points[j]).norm() <= 1e-9) {
          throw std::invalid_argument("PointConfig: points must be pairwise distinct");
        }
      }
    }
  }
};

// Collinear geometric grid 0, d, 2d, ... along a slice direction; the most
// sensitive probe of the radial kernel.
inline PointConfig collinear_config(const MotionModel& model, int m, double spacing,
                                    int direction = 0) {
  if (m < 1) throw std::domain_error("collinear_config: m >= 1 required");
  std::vector<double> h(model.rank, 0.0);
  h[direction] = 1.0;
  PVector dir = model.embed_a(h);
  dir /= dir.norm();
  PointConfig cfg;
  cfg.provenance = PointProvenance::Grid;
  for (int i = 0; i < m; ++i) cfg.points.push_back(PVector(spacing * i * dir));
  cfg.validate();
  return cfg;
}

// Seeded Gaussian cloud in p, guarding against special-position artifacts.
inline PointConfig random_config(const MotionModel& model, int m, double scale,
                                 std::uint64_t seed) {
  if (m < 1) throw std::domain_error("random_config: m >= 1 required");
  Rng rng(seed);
  PointConfig cfg;
  cfg.provenance = PointProvenance::SeededRandom;
  for (int i = 0; i < m; ++i) {
    PVector y(model.dim_p);
    for (int d = 0; d < model.dim_p; ++d) y(d) = scale * rng.gaussian();
    cfg.points.push_back(std::move(y));
  }
  cfg.validate();
  return cfg;
}

struct EvalSettings {
  long mc_samples = 100000;
  std::uint64_t seed = 0;
  double mc_se_ceiling = 0.02;
};

// Monte Carlo error ceiling exceeded while filling the Gram matrix.
struct mc_ceiling_error : std::runtime_error {
  int i, j;
  double std_error;
  mc_ceiling_error(int i_, int j_, double se)
      : std::runtime_error("gram_matrix: MC std_error " + std::to_string(se) +
                           " exceeds ceiling at entry (" + std::to_string(i_) + "," +
                           std::to_string(j_) + ")"),
        i(i_), j(j_), std_error(se) {}
};

namespace detail {

inline bool is_rank_one(const MotionModel& model) {
  return model.name.rfind("rank1:", 0) == 0;
}

// psi_lambda(Y) for a rank-one model via radial quadrature: the K-orbit of Y
// is the sphere of radius |Y|, so psi_lambda(Y) = phi(|Y|, i lambda_1).
inline std::complex<double> psi_quadrature_rank_one(const MotionModel& model,
                                                    const SpectralParam& lambda,
                                                    const PVector& y) {
  const std::complex<double> s = std::complex<double>(0.0, 1.0) * lambda.components[0];
  return phi_radial(model.dim_p, s, y.norm()).to_complex();
}

}  // namespace detail

// Gram matrix G_ij = psi_lambda(Y_i - Y_j). Diagonal is exactly 1. Rank-one
// models are evaluated by quadrature; others by Monte Carlo with per-pair
// derived seeds (the same subseed serves (i,j) and (j,i), so conjugate
// symmetry is exact for real lambda). max_se_out reports the worst Monte
// Carlo standard error actually observed.
inline Eigen::MatrixXcd gram_matrix(const MotionModel& model, const SpectralParam& lambda,
                                    const PointConfig& config,
                                    const EvalSettings& settings = {},
                                    double* max_se_out = nullptr) {
  config.validate();
  const int m = static_cast<int>(config.points.size());
  Eigen::MatrixXcd g(m, m);
  const bool quad = detail::is_rank_one(model);
  double max_se = 0.0;

  for (int i = 0; i < m; ++i) {
    g(i, i) = 1.0;
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const PVector diff = config.points[i] - config.points[j];
      if (quad) {
        g(i, j) = detail::psi_quadrature_rank_one(model, lambda, diff);
      } else {
        const int lo = std::min(i, j), hi = std::max(i, j);
        const std::uint64_t sub = split_seed(settings.seed, static_cast<std::uint64_t>(lo) * m + hi);
        const MCEstimate est = psi_monte_carlo(model, lambda, diff, settings.mc_samples, sub);
        if (est.std_error > settings.mc_se_ceiling) {
          throw mc_ceiling_error(i, j, est.std_error);
        }
        max_se = std::max(max_se, est.std_error);
        g(i, j) = est.value;
      }
    }
  }
  if (max_se_out != nullptr) *max_se_out = max_se;
  return g;
}

// Hermitian PSD decision by a self-adjoint eigensolve. The input must be
// Hermitian to 1e-10; it is symmetrized before the solve. Returns
// (min_eigenvalue >= -tol * max(1, max_eigenvalue), min_eigenvalue).
inline std::pair<bool, double> is_positive_semidefinite(const Eigen::MatrixXcd& g, double tol) {
  const double herm_defect = (g - g.adjoint()).cwiseAbs().maxCoeff();
  if (herm_defect > 1e-10) {
    throw std::invalid_argument("is_positive_semidefinite: matrix is not Hermitian (defect " +
                                std::to_string(herm_defect) + ")");
  }
  const Eigen::MatrixXcd h = 0.5 * (g + g.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  const double max_eig = solver.eigenvalues().maxCoeff();
  return {min_eig >= -tol * std::max(1.0, max_eig), min_eig};
}

struct GramReport {
  Eigen::MatrixXcd matrix;  // Hermitian part actually tested
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  bool psd = false;
  double tolerance_used = 0.0;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (Eigen::Index k = 0; k < matrix.cols(); ++k) {
        row.push_back({matrix(i, k).real(), matrix(i, k).imag()});
      }
      rows.push_back(row);
    }
    j["matrix"] = rows;
    j["min_eigenvalue"] = min_eigenvalue;
    j["max_eigenvalue"] = max_eigenvalue;
    j["psd"] = psd;
    j["tolerance_used"] = tolerance_used;
    return j;
  }
};

inline GramReport gram_report(const Eigen::MatrixXcd& g, double tol) {
  GramReport rep;
  rep.matrix = 0.5 * (g + g.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rep.matrix, Eigen::EigenvaluesOnly);
  rep.min_eigenvalue = solver.eigenvalues().minCoeff();
  rep.max_eigenvalue = solver.eigenvalues().maxCoeff();
  rep.tolerance_used = tol;
  rep.psd = rep.min_eigenvalue >= -tol * std::max(1.0, rep.max_eigenvalue);
  return rep;
}

enum class PdVerdict { PositiveDefinite, NotPositiveDefinite, Inconclusive };

inline const char* to_string(PdVerdict v) {
  switch (v) {
    case PdVerdict::PositiveDefinite: return "PositiveDefinite";
    case PdVerdict::NotPositiveDefinite: return "NotPositiveDefinite";
    case PdVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct BochnerResult {
  PdVerdict verdict = PdVerdict::Inconclusive;
  GramReport worst;       // most negative relative min eigenvalue seen
  std::string reason;
};

// Bochner-style test: seeded Gram trials (alternating collinear grids and
// random clouds) plus a sup-norm probe. A Gram failure must clear a 10x
// margin before it alone decides; growth past |psi| = 1 is the robust
// witness that the kernel cannot be positive definite.
inline BochnerResult bochner_test(const MotionModel& model, const SpectralParam& lambda,
                                  int trials, int m, std::uint64_t seed,
                                  const EvalSettings& settings = {}) {
  if (trials < 1) throw std::domain_error("bochner_test: trials >= 1 required");
  if (m < 2) throw std::domain_error("bochner_test: m >= 2 required");

  const bool quad = detail::is_rank_one(model);

  BochnerResult result;
  bool all_pass = true;
  bool decisive_fail = false;
  double worst_rel = std::numeric_limits<double>::infinity();

  for (int t = 0; t < trials; ++t) {
    const std::uint64_t sub = split_seed(seed, static_cast<std::uint64_t>(t));
    PointConfig cfg;
    if (t % 2 == 0) {
      const double spacing = 0.4 + 0.35 * (Rng(sub).uniform());
      cfg = collinear_config(model, m, spacing, t / 2 % std::max(1, model.rank));
    } else {
      cfg = random_config(model, m, 1.0, sub);
    }

    EvalSettings trial_settings = settings;
    trial_settings.seed = split_seed(sub, 1);
    double max_se = 0.0;
    const Eigen::MatrixXcd g = gram_matrix(model, lambda, cfg, trial_settings, &max_se);
    // eigenvalue perturbation is bounded by the matrix-norm perturbation, so
    // the tolerance scales with m and the evaluator error actually seen
    const double eval_err = quad ? 1e-10 : max_se;
    const double tol = std::max(1e-10, 10.0 * eval_err) * m;
    const GramReport rep = gram_report(g, tol);

    const double rel = rep.min_eigenvalue / std::max(1.0, rep.max_eigenvalue);
    if (rel < worst_rel) {
      worst_rel = rel;
      result.worst = rep;
    }
    if (!rep.psd) {
      all_pass = false;
      if (rep.min_eigenvalue < -10.0 * tol * std::max(1.0, rep.max_eigenvalue)) {
        decisive_fail = true;
      }
    }
  }

  if (decisive_fail) {
    result.verdict = PdVerdict::NotPositiveDefinite;
    result.reason = "gram eigenvalue witness";
    return result;
  }

  // Sup-norm probe (positive definite implies |psi| <= 1): a value above
  // 1 + margin on a short ray sweep refutes positive definiteness.
  const double margin = 0.05;
  bool sup_witness = false;
  if (quad) {
    for (double t = 1.0; t <= 64.0 && !sup_witness; t *= 2.0) {
      const std::complex<double> s = std::complex<double>(0.0, 1.0) * lambda.components[0];
      const LogComplex v = phi_radial(model.dim_p, s, t);
      if (v.log_magnitude() > std::log(1.0 + margin)) sup_witness = true;
    }
  } else {
    std::vector<double> grid{1, 2, 4, 8, 16, 32};
    const BoundednessReport probe = boundedness_classify(
        model, lambda, grid, 1.0 + margin, settings.mc_samples,
        split_seed(seed, 0xABCD1234ULL));
    sup_witness = probe.verdict == Verdict::Unbounded;
  }

  if (sup_witness) {
    result.verdict = PdVerdict::NotPositiveDefinite;
    result.reason = "sup-norm witness |psi| > 1";
  } else if (all_pass) {
    result.verdict = PdVerdict::PositiveDefinite;
    result.reason = "all trial Grams positive semidefinite";
  } else {
    result.verdict = PdVerdict::Inconclusive;
    result.reason = "gram failures within numerical-noise margin and no growth witness";
  }
  return result;
}

}  // namespace mh
