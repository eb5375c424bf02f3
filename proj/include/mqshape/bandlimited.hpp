#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace mqshape {

// Fourier convention used throughout:  f^(xi) = int f(x) e^{-i<x,xi>} dx,
// so Parseval reads ||f||^2_{L2} = (2pi)^{-n} int |f^|^2.

namespace detail {

/// sin(u)/u with a 3-term Taylor switch near the removable singularity.
inline double sinc_core(double u) {
  if (std::abs(u) < 1e-4) {
    double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

}  // namespace detail

/// |f^(xi)|^2 evaluator for one-dimensional members of B_sigma.
struct SpectralDensity {
  std::function<double(double)> density;  // nonnegative, zero outside support
  double support_radius = 0.0;            // sigma
  bool exact_integral = false;            // indicator density integrates exactly
};

/// Band-limited test functions with closed-form spectra and L2 norms.
///
/// sinc_tensor: f(x) = prod_j sin(sigma x_j) / (pi x_j), spectrum the
/// indicator of [-sigma, sigma]^n (per-axis band limit).
/// shifted_sinc_mixture (n = 1): f(x) = sum_j a_j sin(sigma (x - t_j)) / (pi (x - t_j)),
/// |f^|^2 = |sum_j a_j e^{-i xi t_j}|^2 on [-sigma, sigma].
class BandLimitedFn {
 public:
  enum class Kind { sinc_tensor, shifted_sinc_mixture };

  static BandLimitedFn sinc(int n, double sigma) {
    if (n < 1 || !(sigma > 0.0))
      throw std::domain_error("BandLimitedFn::sinc: need n >= 1, sigma > 0");
    BandLimitedFn f;
    f.kind_ = Kind::sinc_tensor;
    f.n_ = n;
    f.sigma_ = sigma;
    return f;
  }

  static BandLimitedFn mixture(double sigma, std::vector<double> shifts,
                               std::vector<double> amplitudes) {
    if (!(sigma > 0.0) || shifts.empty() || shifts.size() != amplitudes.size())
      throw std::domain_error("BandLimitedFn::mixture: bad arguments");
    BandLimitedFn f;
    f.kind_ = Kind::shifted_sinc_mixture;
    f.n_ = 1;
    f.sigma_ = sigma;
    f.shifts_ = std::move(shifts);
    f.amps_ = std::move(amplitudes);
    return f;
  }

  Kind kind() const { return kind_; }
  int dim() const { return n_; }
  double sigma() const { return sigma_; }
  const std::vector<double>& shifts() const { return shifts_; }
  const std::vector<double>& amplitudes() const { return amps_; }

  double operator()(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != n_)
      throw std::domain_error("BandLimitedFn: dimension mismatch");
    if (kind_ == Kind::sinc_tensor) {
      double r = 1.0;
      for (double xi : x) r *= (sigma_ / M_PI) * detail::sinc_core(sigma_ * xi);
      return r;
    }
    double r = 0.0;
    for (std::size_t j = 0; j < shifts_.size(); ++j)
      r += amps_[j] * (sigma_ / M_PI) * detail::sinc_core(sigma_ * (x[0] - shifts_[j]));
    return r;
  }

  double operator()(double x) const {
    return (*this)(std::span<const double>(&x, 1));
  }

  /// Exact squared L2 norm (Parseval).
  double l2_norm_sq() const {
    if (kind_ == Kind::sinc_tensor) return std::pow(sigma_ / M_PI, n_);
    // sum_{j,k} a_j a_k (sigma/pi) sinc(sigma (t_j - t_k))
    double s = 0.0;
    for (std::size_t j = 0; j < shifts_.size(); ++j)
      for (std::size_t k = 0; k < shifts_.size(); ++k)
        s += amps_[j] * amps_[k] * (sigma_ / M_PI) *
             detail::sinc_core(sigma_ * (shifts_[j] - shifts_[k]));
    return s;
  }

  double l2_norm() const { return std::sqrt(l2_norm_sq()); }

  /// |f^(xi)|^2, one-dimensional kinds only (feeds the special-case bounds).
  SpectralDensity spectral_density() const {
    if (n_ != 1)
      throw std::domain_error("spectral_density: one-dimensional functions only");
    SpectralDensity d;
    d.support_radius = sigma_;
    if (kind_ == Kind::sinc_tensor) {
      double s = sigma_;
      d.exact_integral = true;
      d.density = [s](double xi) { return std::abs(xi) <= s ? 1.0 : 0.0; };
    } else {
      double s = sigma_;
      auto shifts = shifts_;
      auto amps = amps_;
      d.exact_integral = false;
      d.density = [s, shifts, amps](double xi) {
        if (std::abs(xi) > s) return 0.0;
        double re = 0.0, im = 0.0;
        for (std::size_t j = 0; j < shifts.size(); ++j) {
          re += amps[j] * std::cos(xi * shifts[j]);
          im -= amps[j] * std::sin(xi * shifts[j]);
        }
        return re * re + im * im;
      };
    }
    return d;
  }

 private:
  BandLimitedFn() = default;

  Kind kind_ = Kind::sinc_tensor;
  int n_ = 1;
  double sigma_ = 1.0;
  std::vector<double> shifts_, amps_;
};

}  // namespace mqshape
