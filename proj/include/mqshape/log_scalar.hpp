#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

namespace mqshape {

/// A signed real held as sign * exp(ln_mag).
///
/// Quantities like e^{2n*gamma_n} (already e^468 at n=3) overflow binary64,
/// so every bound/constant product in this library is accumulated in the log
/// domain and only converted to a plain double at the edges, saturating to
/// +-inf when out of range.  Multiplication adds ln_mag fields exactly; no
/// exp/log roundtrip is involved.
class LogScalar {
 public:
  /// Zero.
  constexpr LogScalar() = default;

  static LogScalar from_value(double v) {
    if (v == 0.0) return LogScalar{};
    if (std::isnan(v)) throw std::domain_error("LogScalar: NaN input");
    return LogScalar(v > 0 ? +1 : -1, std::log(std::abs(v)));
  }

  /// Directly from sign and log-magnitude.  sign 0 means zero (ln ignored).
  static LogScalar from_ln(int sign, double ln_mag) {
    if (sign == 0) return LogScalar{};
    if (ln_mag == -std::numeric_limits<double>::infinity()) return LogScalar{};
    return LogScalar(sign < 0 ? -1 : +1, ln_mag);
  }

  static LogScalar one() { return LogScalar(+1, 0.0); }

  int sign() const { return sign_; }
  double ln_mag() const { return ln_mag_; }
  bool is_zero() const { return sign_ == 0; }

  /// True when |value| exceeds the double range, i.e. to_double() saturates.
  bool overflows_double() const {
    return sign_ != 0 && ln_mag_ > kLnDblMax;
  }

  /// Saturating conversion: +-inf past the double exponent range, 0 below it.
  double to_double() const {
    if (sign_ == 0) return 0.0;
    if (ln_mag_ > kLnDblMax)
      return sign_ * std::numeric_limits<double>::infinity();
    return sign_ * std::exp(ln_mag_);
  }

  /// Conversion with an explicit overflow flag, per the saturation contract.
  double to_double(bool* overflowed) const {
    if (overflowed) *overflowed = overflows_double();
    return to_double();
  }

  LogScalar operator-() const { return LogScalar(-sign_, ln_mag_); }

  LogScalar& operator*=(const LogScalar& o) {
    sign_ *= o.sign_;
    ln_mag_ = (sign_ == 0) ? -std::numeric_limits<double>::infinity()
                           : ln_mag_ + o.ln_mag_;
    return *this;
  }
  friend LogScalar operator*(LogScalar a, const LogScalar& b) { return a *= b; }

  LogScalar& operator/=(const LogScalar& o) {
    if (o.sign_ == 0) throw std::domain_error("LogScalar: division by zero");
    sign_ *= o.sign_;
    if (sign_ != 0) ln_mag_ -= o.ln_mag_;
    return *this;
  }
  friend LogScalar operator/(LogScalar a, const LogScalar& b) { return a /= b; }

  /// Signed addition via log1p; the usual cancellation caveats apply when
  /// opposite signs nearly cancel.
  friend LogScalar operator+(const LogScalar& a, const LogScalar& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    const LogScalar& hi = (a.ln_mag_ >= b.ln_mag_) ? a : b;
    const LogScalar& lo = (a.ln_mag_ >= b.ln_mag_) ? b : a;
    double d = lo.ln_mag_ - hi.ln_mag_;  // <= 0
    if (a.sign_ == b.sign_)
      return LogScalar(a.sign_, hi.ln_mag_ + std::log1p(std::exp(d)));
    if (d == 0.0) return LogScalar{};  // exact cancellation
    double t = -std::expm1(d);         // 1 - exp(d) in (0,1)
    return LogScalar(hi.sign_, hi.ln_mag_ + std::log(t));
  }
  friend LogScalar operator-(const LogScalar& a, const LogScalar& b) {
    return a + (-b);
  }

  /// this^p.  Negative base requires an integer exponent.
  LogScalar pow(double p) const {
    if (sign_ == 0) {
      if (p > 0) return LogScalar{};
      if (p == 0) return one();
      throw std::domain_error("LogScalar: 0 raised to negative power");
    }
    int s = +1;
    if (sign_ < 0) {
      if (std::nearbyint(p) != p)
        throw std::domain_error(
            "LogScalar: negative base with non-integer exponent");
      s = (std::fmod(std::abs(p), 2.0) < 0.5) ? +1 : -1;
    }
    return LogScalar(s, ln_mag_ * p);
  }

  LogScalar sqrt() const {
    if (sign_ < 0) throw std::domain_error("LogScalar: sqrt of negative");
    return sign_ == 0 ? LogScalar{} : LogScalar(+1, 0.5 * ln_mag_);
  }

  LogScalar abs() const { return LogScalar(sign_ == 0 ? 0 : 1, ln_mag_); }

  // Value ordering (not ln ordering).
  friend bool operator<(const LogScalar& a, const LogScalar& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    if (a.sign_ == 0) return false;
    return a.sign_ > 0 ? a.ln_mag_ < b.ln_mag_ : a.ln_mag_ > b.ln_mag_;
  }
  friend bool operator>(const LogScalar& a, const LogScalar& b) { return b < a; }
  friend bool operator<=(const LogScalar& a, const LogScalar& b) { return !(b < a); }
  friend bool operator>=(const LogScalar& a, const LogScalar& b) { return !(a < b); }
  friend bool operator==(const LogScalar& a, const LogScalar& b) {
    return a.sign_ == b.sign_ && (a.sign_ == 0 || a.ln_mag_ == b.ln_mag_);
  }

 private:
  LogScalar(int s, double ln) : sign_(s), ln_mag_(ln) {
    if (sign_ == 0) ln_mag_ = -std::numeric_limits<double>::infinity();
  }

  static constexpr double kLnDblMax = 709.782712893384;  // ln(DBL_MAX)

  int sign_ = 0;
  double ln_mag_ = -std::numeric_limits<double>::infinity();
};

inline LogScalar max(const LogScalar& a, const LogScalar& b) {
  return a < b ? b : a;
}
inline LogScalar min(const LogScalar& a, const LogScalar& b) {
  return a < b ? a : b;
}

/// Signed product prod_i base_i^{exponent_i}, entirely in the log domain.
///
/// A zero base with positive exponent yields zero; zero base with negative
/// exponent is a domain error; 0^0 is treated as 1.  Negative bases demand
/// integer exponents.
inline LogScalar log_combine(
    std::span<const std::pair<LogScalar, double>> terms) {
  int sign = +1;
  double ln = 0.0;
  bool zero = false;
  for (const auto& [base, expo] : terms) {
    if (base.sign() == 0) {
      if (expo > 0) {
        zero = true;
        continue;
      }
      if (expo == 0) continue;
      throw std::domain_error("log_combine: zero base with negative exponent");
    }
    if (base.sign() < 0) {
      if (std::nearbyint(expo) != expo)
        throw std::domain_error(
            "log_combine: negative base with non-integer exponent");
      if (std::fmod(std::abs(expo), 2.0) >= 0.5) sign = -sign;
    }
    ln += expo * base.ln_mag();
  }
  if (zero) return LogScalar{};
  return LogScalar::from_ln(sign, ln);
}

inline LogScalar log_combine(
    std::initializer_list<std::pair<LogScalar, double>> terms) {
  return log_combine(std::span<const std::pair<LogScalar, double>>(
      terms.begin(), terms.size()));
}

}  // namespace mqshape
