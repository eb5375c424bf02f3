#pragma once

#include <cmath>
#include <functional>

#include "mqshape/errors.hpp"

namespace mqshape {

struct IntegrationResult {
  double value = 0.0;
  bool converged = true;
  double error_estimate = 0.0;  // absolute, from the last refinement step
};

namespace detail {

inline double simpson(double fa, double fm, double fb, double h) {
  return (fa + 4.0 * fm + fb) * (h / 6.0);
}

template <class F>
void adapt_step(const F& f, double a, double b, double fa, double fm, double fb,
                double whole, double tol_abs, double floor_abs, int depth,
                IntegrationResult* out) {
  double m = 0.5 * (a + b);
  double lm = f(0.5 * (a + m));
  double rm = f(0.5 * (m + b));
  double left = simpson(fa, lm, fm, m - a);
  double right = simpson(fm, rm, fb, b - m);
  double err = (left + right - whole) / 15.0;  // Richardson on S vs S/2
  // below floor_abs further splitting only shuffles rounding noise
  double accept = std::max(tol_abs, floor_abs);
  if (std::abs(err) <= accept || depth >= 48) {
    if (depth >= 48 && std::abs(err) > accept) out->converged = false;
    out->value += left + right + err;
    out->error_estimate += std::abs(err);
    return;
  }
  adapt_step(f, a, m, fa, lm, fm, left, 0.5 * tol_abs, floor_abs, depth + 1, out);
  adapt_step(f, m, b, fm, rm, fb, right, 0.5 * tol_abs, floor_abs, depth + 1, out);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] targeting relative error
/// rel_tol against interval-halving refinement.  Never throws on
/// non-convergence; the result carries the flag and the best estimate.
template <class F>
IntegrationResult integrate_adaptive(const F& f, double a, double b,
                                     double rel_tol) {
  if (!(a < b)) throw std::domain_error("integrate_adaptive: requires a < b");
  // Coarse scale pass to turn the relative tolerance into an absolute one.
  double scale = 0.0;
  const int kProbe = 16;
  for (int i = 0; i <= kProbe; ++i) {
    double x = a + (b - a) * i / kProbe;
    double fx = f(x);
    if (!std::isfinite(fx))
      throw std::domain_error("integrate_adaptive: integrand not finite");
    scale += std::abs(fx);
  }
  scale = scale / (kProbe + 1) * (b - a);
  if (scale == 0.0) scale = 1.0;
  double tol_abs = rel_tol * scale;

  IntegrationResult out;
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = detail::simpson(fa, fm, fb, b - a);
  detail::adapt_step(f, a, b, fa, fm, fb, whole, tol_abs, 1e-17 * scale, 0, &out);
  return out;
}

/// Throwing wrapper for callers that treat non-convergence as fatal.
template <class F>
double integrate_or_throw(const F& f, double a, double b, double rel_tol) {
  IntegrationResult r = integrate_adaptive(f, a, b, rel_tol);
  if (!r.converged)
    throw numerical_error(
        "integrate_adaptive: max depth reached, best estimate " +
        std::to_string(r.value) + " (abs error est " +
        std::to_string(r.error_estimate) + ")");
  return r.value;
}

}  // namespace mqshape
