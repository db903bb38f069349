#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace mh {

// Complex value stored as (log|z|, arg z). Radial spherical functions grow
// like e^{s r}, which leaves the double range near s r ~ 709; carrying the
// logarithm keeps every quantity representable. log_magnitude == -inf
// encodes z == 0. Multiplication and division just add/subtract fields.
class LogComplex {
 public:
  LogComplex() : log_mag_(-std::numeric_limits<double>::infinity()), phase_(0.0) {}

  LogComplex(double log_magnitude, double phase)
      : log_mag_(log_magnitude), phase_(wrap_phase(phase)) {}

  static LogComplex from(std::complex<double> z) {
    const double m = std::abs(z);
    if (m == 0.0) return LogComplex();
    return LogComplex(std::log(m), std::arg(z));
  }

  double log_magnitude() const { return log_mag_; }
  // in (-pi, pi]
  double phase() const { return phase_; }

  bool is_zero() const { return std::isinf(log_mag_) && log_mag_ < 0.0; }

  // Faithful for |log_magnitude| <= ~709; overflows to inf beyond that.
  std::complex<double> to_complex() const {
    if (is_zero()) return {0.0, 0.0};
    const double m = std::exp(log_mag_);
    return {m * std::cos(phase_), m * std::sin(phase_)};
  }

  friend LogComplex operator*(const LogComplex& a, const LogComplex& b) {
    if (a.is_zero() || b.is_zero()) return LogComplex();
    return LogComplex(a.log_mag_ + b.log_mag_, a.phase_ + b.phase_);
  }

  friend LogComplex operator/(const LogComplex& a, const LogComplex& b) {
    return LogComplex(a.log_mag_ - b.log_mag_, a.phase_ - b.phase_);
  }

  // a/b as an ordinary complex; safe whenever the *difference* of the log
  // magnitudes is moderate, even if both values overflow on their own.
  static std::complex<double> ratio(const LogComplex& a, const LogComplex& b) {
    return (a / b).to_complex();
  }

  // Map any angle into (-pi, pi].
  static double wrap_phase(double p) {
    if (!std::isfinite(p)) return 0.0;
    double w = std::remainder(p, 2.0 * std::numbers::pi);
    if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
    return w;
  }

 private:
  double log_mag_;
  double phase_;
};

}  // namespace mh
