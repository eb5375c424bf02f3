#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mqshape/log_scalar.hpp"
#include "mqshape/special_functions.hpp"

namespace mqshape {

namespace detail {

/// Minimal unsigned big integer; just enough for the gamma_n recursion,
/// which outgrows uint64 around n = 17.
class BigUint {
 public:
  explicit BigUint(std::uint64_t v = 0) {
    while (v) {
      limbs_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
      v >>= 32;
    }
  }

  void add_small(std::uint32_t v) {
    std::uint64_t carry = v;
    for (std::size_t i = 0; carry && i < limbs_.size(); ++i) {
      carry += limbs_[i];
      limbs_[i] = static_cast<std::uint32_t>(carry & 0xffffffffu);
      carry >>= 32;
    }
    if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
  }

  void mul_small(std::uint32_t v) {
    std::uint64_t carry = 0;
    for (auto& limb : limbs_) {
      std::uint64_t t = static_cast<std::uint64_t>(limb) * v + carry;
      limb = static_cast<std::uint32_t>(t & 0xffffffffu);
      carry = t >> 32;
    }
    while (carry) {
      limbs_.push_back(static_cast<std::uint32_t>(carry & 0xffffffffu));
      carry >>= 32;
    }
    if (v == 0) limbs_.clear();
  }

  bool is_zero() const { return limbs_.empty(); }

  /// Saturating; +inf past the double range.
  double to_double() const {
    double r = 0.0;
    for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it)
      r = r * 4294967296.0 + *it;
    return r;
  }

  double ln() const {
    if (is_zero()) return -std::numeric_limits<double>::infinity();
    // top (up to) 96 bits as mantissa, rest as power of 2^32
    double m = 0.0;
    std::size_t top = limbs_.size();
    std::size_t take = top < 3 ? top : 3;
    for (std::size_t i = 0; i < take; ++i)
      m = m * 4294967296.0 + limbs_[top - 1 - i];
    return std::log(m) + static_cast<double>(top - take) * 32.0 * M_LN2;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::vector<std::uint32_t> work(limbs_);
    std::string digits;
    while (!work.empty()) {
      std::uint64_t rem = 0;
      for (std::size_t i = work.size(); i-- > 0;) {
        std::uint64_t cur = (rem << 32) | work[i];
        work[i] = static_cast<std::uint32_t>(cur / 1000000000u);
        rem = cur % 1000000000u;
      }
      while (!work.empty() && work.back() == 0) work.pop_back();
      char buf[10];
      std::snprintf(buf, sizeof buf, work.empty() ? "%llu" : "%09llu",
                    static_cast<unsigned long long>(rem));
      digits.insert(0, buf);
    }
    return digits;
  }

 private:
  std::vector<std::uint32_t> limbs_;  // little-endian, base 2^32
};

}  // namespace detail

/// gamma_n, exact: gamma_1 = 2, gamma_n = 2n (1 + gamma_{n-1}).
struct GammaSeqValue {
  detail::BigUint exact;
  double ln = 0.0;

  double to_double() const { return exact.to_double(); }
  LogScalar as_log_scalar() const { return LogScalar::from_ln(+1, ln); }
  std::string to_string() const { return exact.to_string(); }
};

inline GammaSeqValue gamma_seq(int n) {
  if (n < 1) throw std::domain_error("gamma_seq: requires n >= 1");
  detail::BigUint g(2);
  for (int k = 2; k <= n; ++k) {
    g.add_small(1);
    g.mul_small(static_cast<std::uint32_t>(2 * k));
  }
  GammaSeqValue out;
  out.ln = g.ln();
  out.exact = std::move(g);
  return out;
}

/// Order of conditional positive definiteness, m = max{0, ceil(beta/2)}.
/// Nonnegative even integers are excluded from the kernel family.
inline int cpd_order(double beta) {
  if (beta >= 0.0 && std::nearbyint(beta) == beta &&
      std::fmod(beta, 2.0) == 0.0)
    throw std::domain_error("excluded exponent: beta in 2*{0,1,2,...}");
  double c = std::ceil(beta / 2.0);
  int m = static_cast<int>(c);
  return m < 0 ? 0 : m;
}

/// rho and Delta_0 for a given (n, beta), with the auxiliary integer s where
/// the case defines one.
///
/// Cases partition the (n, beta) plane:
///   (a)  beta < n-3, s = ceil((n-beta-3)/2):
///        (i)  beta < 0: rho = (3+s)/3,        Delta0 = (2+s)(1+s)...3 / rho^2
///        (ii) beta > 0: rho = 1 + s/(2m+3),   Delta0 = (2m+2+s)...(2m+3) / rho^{2m+2}
///   (b)  n-3 <= beta < n-1: rho = 1, Delta0 = 1
///   (c)  beta >= n-1, s = -ceil((n-beta-3)/2):
///        rho = 1, Delta0 = 1 / ((2m+2)(2m+1)...(2m-s+3))
/// Every product runs over exactly s descending integer factors; an empty
/// range (s = 0) is the empty product 1.  For real beta the case-(c)
/// condition forces s >= 1, so the s = 0 convention is defensive only.
struct SmoothnessConstants {
  int n = 1;
  double beta = 0.0;
  int m = 0;
  double rho = 1.0;
  LogScalar delta0_const = LogScalar::one();
  std::optional<int> s;
  std::string case_label;  // "a.i", "a.ii", "b", "c"

  double delta0_value() const { return delta0_const.to_double(); }
};

namespace detail {

// ln of first * (first-1) * ... * (first-count+1); empty product for count 0.
inline LogScalar descending_product(int first, int count) {
  double ln = 0.0;
  for (int j = 0; j < count; ++j) {
    int f = first - j;
    if (f <= 0)
      throw std::domain_error("descending_product: nonpositive factor");
    ln += std::log(static_cast<double>(f));
  }
  return LogScalar::from_ln(+1, ln);
}

}  // namespace detail

inline SmoothnessConstants rho_delta0(int n, double beta) {
  if (n < 1) throw std::domain_error("rho_delta0: requires n >= 1");
  SmoothnessConstants out;
  out.n = n;
  out.beta = beta;
  out.m = cpd_order(beta);
  if (beta < n - 3) {
    int s = static_cast<int>(std::ceil((n - beta - 3.0) / 2.0));
    out.s = s;
    if (beta < 0) {
      out.case_label = "a.i";
      out.rho = (3.0 + s) / 3.0;
      out.delta0_const = detail::descending_product(2 + s, s) /
                         LogScalar::from_value(out.rho).pow(2.0);
    } else {
      out.case_label = "a.ii";
      int m = out.m;  // = ceil(beta/2), beta > 0 here
      out.rho = 1.0 + static_cast<double>(s) / (2 * m + 3);
      out.delta0_const = detail::descending_product(2 * m + 2 + s, s) /
                         LogScalar::from_value(out.rho).pow(2.0 * m + 2.0);
    }
  } else if (beta < n - 1) {
    out.case_label = "b";
    out.rho = 1.0;
    out.delta0_const = LogScalar::one();
  } else {
    out.case_label = "c";
    int s = -static_cast<int>(std::ceil((n - beta - 3.0) / 2.0));
    out.s = s;
    out.rho = 1.0;
    out.delta0_const =
        LogScalar::one() / detail::descending_product(2 * out.m + 2, s);
  }
  return out;
}

/// Volume of the unit ball in R^n.
inline double unit_ball_volume(int n) {
  if (n < 1) throw std::domain_error("unit_ball_volume: requires n >= 1");
  return std::pow(M_PI, 0.5 * n) / gamma_fn(0.5 * n + 1.0);
}

/// Number of multi-indices alpha in n variables with |alpha| = m,
/// i.e. C(m+n-1, n-1); equals 1 for m = 0.
inline long long smn(int m, int n) {
  if (m < 0 || n < 1) throw std::domain_error("smn: requires m >= 0, n >= 1");
  long long r = 1;
  for (int i = 1; i <= n - 1; ++i) r = r * (m + i) / i;  // exact: C grows by integer steps
  return r;
}

/// The constants of the main error bound: C, lambda, delta_0, rho' and the
/// active branch of the max defining C.  All potentially huge quantities are
/// carried as LogScalar (e^{2n gamma_n} is e^468 already at n = 3).
struct TheoremConstants {
  SmoothnessConstants smoothness;
  int n = 1;
  double beta = 0.0, b0 = 1.0, c = 1.0;
  int m = 0;
  GammaSeqValue gamma_n;

  LogScalar C;
  LogScalar delta0;
  LogScalar rho_prime;   // rho / c
  LogScalar crossover_c0;  // 3 b0 rho sqrt(n) e^{2n gamma_n}
  enum class Regime { c_small, c_large } regime = Regime::c_small;

  double lambda = 1.0;       // saturating value in (0,1); 1.0 means underflowed
  LogScalar ln_lambda_mag;   // |ln lambda|, kept exactly in the log domain

  /// lambda^{1/delta} = (2/3)^{(m+1) delta0/delta}; evaluating through the
  /// delta0/delta ratio keeps the identity lambda^{1/delta0} = (2/3)^{m+1}
  /// exact instead of cancelling ~ln C digits.  The LogScalar overload is for
  /// deltas below the double range (delta0 itself underflows from n = 3 on).
  LogScalar lambda_pow_inv_delta(const LogScalar& delta) const {
    if (!(delta.sign() > 0))
      throw std::domain_error("lambda_pow_inv_delta: requires delta > 0");
    double ratio = std::exp(delta0.ln_mag() - delta.ln_mag());
    double expo = (m + 1) * kLn23 * ratio;  // <= 0
    return LogScalar::from_ln(+1, expo);
  }
  LogScalar lambda_pow_inv_delta(double delta) const {
    if (!(delta > 0.0))
      throw std::domain_error("lambda_pow_inv_delta: requires delta > 0");
    return lambda_pow_inv_delta(LogScalar::from_value(delta));
  }

  static constexpr double kLn23 = -0.4054651081081644;  // ln(2/3)
};

inline TheoremConstants theorem_constants(int n, double beta, double b0,
                                          double c) {
  if (!(b0 > 0.0)) throw std::domain_error("theorem_constants: requires b0 > 0");
  if (!(c > 0.0)) throw std::domain_error("invalid shape parameter: c <= 0");
  TheoremConstants tc;
  tc.smoothness = rho_delta0(n, beta);
  tc.n = n;
  tc.beta = beta;
  tc.b0 = b0;
  tc.c = c;
  tc.m = tc.smoothness.m;
  tc.gamma_n = gamma_seq(n);

  double two_n_gamma = 2.0 * n * tc.gamma_n.to_double();  // inf for absurd n
  double rho = tc.smoothness.rho;
  LogScalar branch_small = LogScalar::from_ln(
      +1, std::log(2.0 * rho / c * std::sqrt(static_cast<double>(n))) +
              two_n_gamma);
  LogScalar branch_large = LogScalar::from_value(2.0 / (3.0 * b0));
  tc.regime = branch_small > branch_large ? TheoremConstants::Regime::c_small
                                          : TheoremConstants::Regime::c_large;
  tc.C = max(branch_small, branch_large);
  tc.rho_prime = LogScalar::from_value(rho / c);
  tc.crossover_c0 = LogScalar::from_ln(
      +1, std::log(3.0 * b0 * rho * std::sqrt(static_cast<double>(n))) +
              two_n_gamma);

  double ln6 = std::log(6.0);
  tc.delta0 = LogScalar::from_ln(
      +1, -(ln6 + tc.C.ln_mag() + tc.gamma_n.ln + std::log(tc.m + 1.0)));
  tc.ln_lambda_mag = LogScalar::from_ln(
      +1, std::log(-TheoremConstants::kLn23) - ln6 - tc.C.ln_mag() -
              tc.gamma_n.ln);
  tc.lambda = std::exp(-tc.ln_lambda_mag.to_double());
  return tc;
}

}  // namespace mqshape
