#pragma once

#include <cmath>
#include <stdexcept>

#include "mqshape/quadrature.hpp"

namespace mqshape {

namespace detail {

// Lanczos, g = 7, 9 terms.  ~15 correct digits on the right half plane.
inline double lanczos_gamma(double x) {
  static const double kCoef[9] = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  double z = x - 1.0;
  double a = kCoef[0];
  for (int i = 1; i < 9; ++i) a += kCoef[i] / (z + i);
  double t = z + 7.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

}  // namespace detail

/// Classical gamma function; reflection formula for x < 0.5.
/// Poles at nonpositive integers are a domain error.
inline double gamma_fn(double x) {
  if (x <= 0.0 && std::nearbyint(x) == x)
    throw std::domain_error("gamma_fn: pole at nonpositive integer");
  if (x < 0.5) {
    // Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return M_PI / (std::sin(M_PI * x) * detail::lanczos_gamma(1.0 - x));
  }
  return detail::lanczos_gamma(x);
}

/// Modified Bessel function of the second kind, order zero.
///
/// Ascending series for x <= 2; for larger x the series loses ~2x/ln(10)
/// digits to cancellation, so the scaled integral representation
///   e^x K0(x) = int_0^inf exp(-x (cosh t - 1)) dt
/// is integrated adaptively instead, keeping >= 10 significant digits
/// across [0.05, 50].
inline double bessel_k0(double x) {
  if (!(x > 0.0)) throw std::domain_error("bessel_k0: requires x > 0");
  const double kEulerGamma = 0.57721566490153286;
  if (x <= 2.0) {
    double q = 0.25 * x * x;
    // I0 and the companion sum share the term recursion.
    double term = 1.0, i0 = 1.0, sum = 0.0, h = 0.0;
    for (int k = 1; k < 64; ++k) {
      term *= q / (static_cast<double>(k) * k);
      h += 1.0 / k;
      i0 += term;
      sum += term * h;
      if (term < 1e-20 * i0) break;
    }
    return -(std::log(0.5 * x) + kEulerGamma) * i0 + sum;
  }
  // Upper limit where exp(-x (cosh t - 1)) < 1e-20 relative to the peak.
  double tmax = std::acosh(1.0 + 50.0 / x);
  double scaled = integrate_or_throw(
      [x](double t) { return std::exp(-x * (std::cosh(t) - 1.0)); }, 0.0,
      tmax, 1e-13);
  return scaled * std::exp(-x);
}

}  // namespace mqshape
