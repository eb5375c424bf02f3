#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include "mqshape/big_float.hpp"
#include "mqshape/constants.hpp"
#include "mqshape/special_functions.hpp"

namespace mqshape {

/// The (inverse) multiquadric  h(x) = Gamma(-beta/2) (c^2 + |x|^2)^{beta/2},
/// beta not a nonnegative even integer, c > 0.
struct KernelSpec {
  double beta = -1.0;
  double c = 1.0;
  int m = 0;              // CPD order, max{0, ceil(beta/2)}
  double gamma_factor = 0.0;  // Gamma(-beta/2), cached
};

inline KernelSpec validate_spec(double beta, double c) {
  if (!(c > 0.0)) throw std::domain_error("invalid shape parameter: c must be > 0");
  KernelSpec spec;
  spec.m = cpd_order(beta);  // throws "excluded exponent" on beta in 2N>=0
  spec.beta = beta;
  spec.c = c;
  spec.gamma_factor = gamma_fn(-beta / 2.0);
  return spec;
}

/// Radial form: h at squared distance r^2.
inline double kernel_eval_sq(const KernelSpec& spec, double sq_dist) {
  return spec.gamma_factor * std::pow(spec.c * spec.c + sq_dist, 0.5 * spec.beta);
}

inline double kernel_eval(const KernelSpec& spec, std::span<const double> x) {
  double sq = 0.0;
  for (double xi : x) sq += xi * xi;
  return kernel_eval_sq(spec, sq);
}

/// Extended-precision kernel evaluation context.  Caches Gamma(-beta/2), c^2
/// and beta/2 at the requested precision so the per-entry cost is one power.
class ExtendedKernel {
 public:
  ExtendedKernel(const KernelSpec& spec, int bits)
      : bits_(bits),
        gamma_factor_(tgamma(BigFloat(-spec.beta / 2.0, bits))),
        c_sq_(BigFloat(spec.c, bits) * BigFloat(spec.c, bits)),
        half_beta_(spec.beta / 2.0, bits) {}

  int bits() const { return bits_; }

  BigFloat at_sq(const BigFloat& sq_dist) const {
    return gamma_factor_ * pow(c_sq_ + sq_dist, half_beta_);
  }

  BigFloat at(std::span<const double> x) const {
    BigFloat sq(0.0, bits_);
    for (double xi : x) {
      BigFloat v(xi, bits_);
      sq += v * v;
    }
    return at_sq(sq);
  }

 private:
  int bits_;
  BigFloat gamma_factor_, c_sq_, half_beta_;
};

}  // namespace mqshape
